#include "spearsift/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "spearsift/artifacts.hpp"
#include "spearsift/errors.hpp"
#include "spearsift/eval.hpp"
#include "spearsift/report_plots.hpp"

namespace spearsift {

namespace fs = std::filesystem;

namespace {

std::string trim_copy(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return {};
    return s.substr(b, e - b + 1);
}

double parse_fraction(const std::string& value, const std::string& key) {
    char* end = nullptr;
    double parsed = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw InvalidConfig("bad number for " + key + ": " + value);
    return parsed;
}

std::uint64_t parse_u64(const std::string& value, const std::string& key) {
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0')
        throw InvalidConfig("bad integer for " + key + ": " + value);
    return parsed;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

}  // namespace

void parse_config_line(PipelineConfig& config, const std::string& key,
                       const std::string& value) {
    if (key == "corpus") {
        std::size_t colon = value.find(':');
        if (colon == std::string::npos)
            throw InvalidConfig("corpus wants <format>:<path>, got: " + value);
        config.sources.push_back(
            {fs::path(value.substr(colon + 1)),
             corpus_format_from_name(value.substr(0, colon))});
    } else if (key == "split.train") {
        config.train_fraction = parse_fraction(value, key);
    } else if (key == "split.validation") {
        config.validation_fraction = parse_fraction(value, key);
    } else if (key == "split.test") {
        config.test_fraction = parse_fraction(value, key);
    } else if (key == "rl.epsilon") {
        config.rl.epsilon = parse_fraction(value, key);
    } else if (key == "rl.rounds") {
        config.rl.rounds = parse_u64(value, key);
    } else if (key == "rl.steps_per_round") {
        config.rl.steps_per_round = parse_u64(value, key);
    } else if (key == "rl.knn_k") {
        config.rl.knn_k = parse_u64(value, key);
    } else if (key == "rl.distance") {
        config.rl.distance = distance_from_name(value);
    } else if (key == "attacks") {
        config.attacks.clear();
        std::size_t start = 0;
        while (start <= value.size()) {
            std::size_t comma = value.find(',', start);
            std::string name = trim_copy(
                comma == std::string::npos ? value.substr(start)
                                           : value.substr(start, comma - start));
            if (!name.empty()) config.attacks.push_back(attack_kind_from_name(name));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    } else if (key == "out") {
        config.out_dir = value;
    } else if (key == "seed") {
        config.seed = parse_u64(value, key);
    } else {
        throw InvalidConfig("unknown config key: " + key);
    }
}

PipelineConfig load_pipeline_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config " + path.string());
    PipelineConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim_copy(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidConfig(path.string() + ":" + std::to_string(line_no) +
                                ": expected key=value");
        parse_config_line(config, trim_copy(line.substr(0, eq)),
                          trim_copy(line.substr(eq + 1)));
    }
    return config;
}

void apply_env_overrides(PipelineConfig& config) {
    if (const char* out = std::getenv("SPEARSIFT_OUT"); out && *out)
        config.out_dir = out;
}

void validate_config(const PipelineConfig& config) {
    const double sum = config.train_fraction + config.validation_fraction +
                       config.test_fraction;
    if (std::abs(sum - 1.0) > 1e-9)
        throw InvalidConfig("split fractions must sum to 1, got " +
                            format_double(sum));
    if (config.train_fraction <= 0.0 || config.validation_fraction <= 0.0 ||
        config.test_fraction <= 0.0)
        throw InvalidConfig("every split fraction must be positive");
    if (config.attacks.empty()) throw InvalidConfig("no attack kinds requested");
    for (std::size_t i = 0; i < config.attacks.size(); ++i)
        for (std::size_t j = i + 1; j < config.attacks.size(); ++j)
            if (config.attacks[i] == config.attacks[j])
                throw InvalidConfig("duplicate attack kind requested");
    if (config.rl.epsilon < 0.0 || config.rl.epsilon > 1.0)
        throw InvalidConfig("epsilon must lie in [0, 1]");
}

std::string canonical_config(const PipelineConfig& config) {
    std::string out;
    out += "attacks=";
    for (std::size_t i = 0; i < config.attacks.size(); ++i) {
        if (i) out += ',';
        out += attack_kind_name(config.attacks[i]);
    }
    out += '\n';
    for (const CorpusSource& source : config.sources)
        out += "corpus=" + std::string(corpus_format_name(source.format)) + ":" +
               source.path.generic_string() + "\n";
    out += "rl.distance=" + std::string(distance_name(config.rl.distance)) + "\n";
    out += "rl.epsilon=" + format_double(config.rl.epsilon) + "\n";
    out += "rl.knn_k=" + std::to_string(config.rl.knn_k) + "\n";
    out += "rl.rounds=" + std::to_string(config.rl.rounds) + "\n";
    out += "rl.steps_per_round=" + std::to_string(config.rl.steps_per_round) + "\n";
    out += "seed=" + std::to_string(config.seed) + "\n";
    out += "split.test=" + format_double(config.test_fraction) + "\n";
    out += "split.train=" + format_double(config.train_fraction) + "\n";
    out += "split.validation=" + format_double(config.validation_fraction) + "\n";
    return out;
}

std::uint64_t config_hash(const PipelineConfig& config) {
    return fnv1a64(canonical_config(config));
}

SplitIndices stratified_split(const Corpus& corpus, double train_fraction,
                              double validation_fraction, double test_fraction,
                              std::uint64_t seed) {
    std::map<std::string, std::vector<std::size_t>> by_sender;
    for (std::size_t i = 0; i < corpus.emails.size(); ++i)
        by_sender[corpus.emails[i].claimed_sender].push_back(i);

    Rng rng(derive_seed(seed, "split"));
    SplitIndices split;
    const double fractions[3] = {train_fraction, validation_fraction, test_fraction};
    std::vector<std::size_t>* const buckets[3] = {&split.train, &split.validation,
                                                  &split.test};

    for (auto& [sender, indices] : by_sender) {
        rng.shuffle(indices);
        const std::size_t n = indices.size();

        // Largest-remainder allocation; remainder ties favor train, then
        // validation, then test.
        std::size_t counts[3];
        double remainders[3];
        std::size_t assigned = 0;
        for (int s = 0; s < 3; ++s) {
            const double quota = fractions[s] * static_cast<double>(n);
            counts[s] = static_cast<std::size_t>(quota);
            remainders[s] = quota - static_cast<double>(counts[s]);
            assigned += counts[s];
        }
        int order[3] = {0, 1, 2};
        std::stable_sort(order, order + 3,
                         [&](int a, int b) { return remainders[a] > remainders[b]; });
        for (std::size_t extra = 0; assigned < n; ++assigned, ++extra)
            ++counts[order[extra % 3]];

        std::size_t cursor = 0;
        for (int s = 0; s < 3; ++s)
            for (std::size_t c = 0; c < counts[s]; ++c)
                buckets[s]->push_back(indices[cursor++]);
    }
    for (auto* bucket : buckets) std::sort(bucket->begin(), bucket->end());
    return split;
}

namespace {

void write_split(const fs::path& dir, const Corpus& corpus,
                 const std::vector<std::size_t>& indices, std::ofstream& manifest,
                 const std::string& split_name) {
    fs::remove_all(dir);
    fs::create_directories(dir);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "%06zu.eml", i);
        const RawEmail& email = corpus.emails[indices[i]];
        open_out(dir / name) << serialize_email(email);
        manifest << split_name << "," << name << "," << email.source_id << ","
                 << email.claimed_sender << "\n";
    }
}

Corpus load_split(const PipelineConfig& config, const char* split_name) {
    const fs::path dir = config.out_dir / split_name;
    if (!fs::is_directory(dir))
        throw IoError("missing split directory " + dir.string() +
                      " (run `ingest` first)");
    return load_corpus(dir, CorpusFormat::eml_dir).corpus;
}

std::size_t half_size(const Corpus& corpus, const char* what) {
    const std::size_t n = corpus.emails.size() / 2;
    if (n == 0)
        throw InsufficientCorpus(std::string(what) +
                                 " split is too small to build a balanced set");
    return n;
}

struct LoadedArtifacts {
    FeatureSubset subset;
    Vocabulary vocab;
    SenderProfileModel model;
};

LoadedArtifacts load_artifacts(const fs::path& dir, std::uint64_t expected_hash) {
    LoadedArtifacts loaded;
    std::uint64_t found = 0;
    loaded.subset = load_subset(dir / "subset.txt", expected_hash, &found);
    const std::uint64_t hash = expected_hash == kAnyConfigHash ? found : expected_hash;
    loaded.vocab = load_vocabulary(dir / "vocabulary.txt", hash);
    loaded.model = load_model(dir / "model.txt", hash);
    return loaded;
}

}  // namespace

IngestSummary cmd_ingest(const PipelineConfig& config) {
    validate_config(config);
    if (config.sources.empty()) throw InvalidConfig("no corpus sources configured");

    Corpus merged;
    std::string manifest_text;
    std::size_t skipped = 0;
    for (std::size_t s = 0; s < config.sources.size(); ++s) {
        const CorpusSource& source = config.sources[s];
        LoadResult result = load_corpus(source.path, source.format);
        manifest_text += "# source: " + source.path.generic_string() + " (" +
                         std::string(corpus_format_name(source.format)) + ")\n";
        manifest_text += format_load_manifest(result);
        skipped += result.skipped.size();
        for (RawEmail& email : result.corpus.emails) {
            if (config.sources.size() > 1)
                email.source_id = "s" + std::to_string(s) + ":" + email.source_id;
            merged.emails.push_back(std::move(email));
        }
    }

    fs::create_directories(config.out_dir);
    open_out(config.out_dir / "manifest_load.txt") << manifest_text;
    {
        auto out = open_out(config.out_dir / "config.txt");
        out << "# config_hash=" << hash_hex(config_hash(config)) << "\n";
        out << canonical_config(config);
    }

    SplitIndices split =
        stratified_split(merged, config.train_fraction, config.validation_fraction,
                         config.test_fraction, config.seed);

    auto manifest = open_out(config.out_dir / "splits.csv");
    manifest << "split,filename,source_id,sender\n";
    write_split(config.out_dir / "train", merged, split.train, manifest, "train");
    write_split(config.out_dir / "validation", merged, split.validation, manifest,
                "validation");
    write_split(config.out_dir / "test", merged, split.test, manifest, "test");

    IngestSummary summary;
    summary.loaded = merged.emails.size();
    summary.skipped = skipped;
    summary.train = split.train.size();
    summary.validation = split.validation.size();
    summary.test = split.test.size();
    return summary;
}

void cmd_forge(const PipelineConfig& config) {
    validate_config(config);
    const Corpus train = load_split(config, "train");
    const Corpus test = load_split(config, "test");
    const DonorPools pools = collect_pools(train);
    const std::size_t n = half_size(test, "test");

    for (AttackKind attack : config.attacks) {
        const std::string name(attack_kind_name(attack));
        TestSet items = build_test_set(test, pools, attack, n,
                                       derive_seed(config.seed, "test:" + name));
        const fs::path dir = config.out_dir / "forged" / name;
        fs::remove_all(dir);
        fs::create_directories(dir);

        auto manifest = open_out(dir / "manifest.csv");
        manifest << "filename,donor_source_id,attack,impersonated_sender\n";
        std::size_t written = 0;
        for (const LabeledEmail& item : items) {
            if (!item.is_spear) continue;
            char file[32];
            std::snprintf(file, sizeof(file), "%06zu.eml", written++);
            open_out(dir / file) << serialize_email(item.email);
            manifest << file << "," << item.donor_source_id << "," << name << ","
                     << item.email.claimed_sender << "\n";
        }
    }
}

void cmd_select(const PipelineConfig& config) {
    validate_config(config);
    const Corpus train = load_split(config, "train");
    const Corpus validation = load_split(config, "validation");
    const DonorPools pools = collect_pools(train);
    const std::size_t n = half_size(validation, "validation");
    const std::uint64_t hash = config_hash(config);

    for (AttackKind attack : config.attacks) {
        const std::string name(attack_kind_name(attack));
        TestSet validation_set = build_test_set(
            validation, pools, attack, n, derive_seed(config.seed, "validation:" + name));

        RLConfig rl = config.rl;
        rl.seed = derive_seed(config.seed, "select:" + name);
        SelectionResult selection;
        try {
            selection = run_selection(rl, train, validation_set);
        } catch (const EmptyResult& e) {
            throw EmptyResult("selection for " + name + " produced no subset (" +
                              e.what() + ")");
        }

        const fs::path dir = config.out_dir / "select" / name;
        fs::remove_all(dir);
        fs::create_directories(dir);
        save_subset(dir / "subset.txt", selection.subset, hash);
        save_table(dir / "table.txt", selection.table, hash);
        save_selection_log(dir / "selection_log.csv", selection.log);

        Vocabulary vocab = build_vocabulary(train, selection.subset);
        std::vector<FeatureVector> vectors;
        std::vector<std::string> labels;
        for (const RawEmail& email : train.emails) {
            vectors.push_back(vectorize(email, vocab, selection.subset));
            labels.push_back(email.claimed_sender);
        }
        SenderProfileModel model = fit_profiles(std::move(vectors), std::move(labels),
                                                config.rl.knn_k, config.rl.distance);
        save_vocabulary(dir / "vocabulary.txt", vocab, hash);
        save_model(dir / "model.txt", model, hash);
    }
}

int cmd_predict(const fs::path& artifacts_dir, const fs::path& email_path,
                std::ostream& out) {
    LoadedArtifacts loaded = load_artifacts(artifacts_dir, kAnyConfigHash);

    std::ifstream in(email_path, std::ios::binary);
    if (!in) throw IoError("cannot read " + email_path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();

    RawEmail email = parse_email(buffer.str(), email_path.filename().string());
    SpearVerdict verdict =
        detect_spear(loaded.model, email, loaded.vocab, loaded.subset);
    out << (verdict.is_spear ? "spear" : "benign")
        << " predicted=" << verdict.predicted_sender
        << " claimed=" << verdict.claimed_sender << "\n";
    return verdict.is_spear ? 1 : 0;
}

void cmd_report(const PipelineConfig& config) {
    validate_config(config);
    const Corpus train = load_split(config, "train");
    const Corpus test = load_split(config, "test");
    const DonorPools pools = collect_pools(train);
    const std::size_t n = half_size(test, "test");
    const std::uint64_t hash = config_hash(config);

    const std::size_t kinds = config.attacks.size();
    std::vector<TestSet> test_sets;
    for (AttackKind attack : config.attacks) {
        const std::string name(attack_kind_name(attack));
        test_sets.push_back(build_test_set(test, pools, attack, n,
                                           derive_seed(config.seed, "test:" + name)));
    }

    const fs::path report_dir = config.out_dir / "report";
    fs::remove_all(report_dir);
    fs::create_directories(report_dir);

    std::vector<std::vector<double>> matrix(kinds, std::vector<double>(kinds, 0.0));
    std::vector<ConfusionCounts> diagonal(kinds);

    auto pca_csv = open_out(report_dir / "pca_summary.csv");
    pca_csv << "attack,dimension,components,eigenvalue1,eigenvalue2,"
               "pc1_min,pc1_q1,pc1_median,pc1_q3,pc1_max,pc1_iqr,"
               "pc2_min,pc2_q1,pc2_median,pc2_q3,pc2_max,pc2_iqr\n";

    for (std::size_t i = 0; i < kinds; ++i) {
        const std::string trained(attack_kind_name(config.attacks[i]));
        LoadedArtifacts loaded =
            load_artifacts(config.out_dir / "select" / trained, hash);

        for (std::size_t j = 0; j < kinds; ++j) {
            const std::string tested(attack_kind_name(config.attacks[j]));
            std::vector<VerdictRecord> records;
            ConfusionCounts counts = tally_verdicts(loaded.model, loaded.vocab,
                                                    loaded.subset, test_sets[j],
                                                    &records);
            save_verdicts(report_dir / ("verdicts_" + trained + "_" + tested + ".csv"),
                          records);
            matrix[i][j] = accuracy(counts);
            if (i == j) diagonal[i] = counts;
        }

        // Feature-stability summary: the attack's own test set projected
        // onto the top two principal components of its vector space.
        std::vector<FeatureVector> sample;
        std::vector<bool> spear_flags;
        for (const LabeledEmail& item : test_sets[i]) {
            sample.push_back(vectorize(item.email, loaded.vocab, loaded.subset));
            spear_flags.push_back(item.is_spear);
        }
        try {
            PcaSummary pca = pca_2d(sample);
            pca_csv << trained << "," << pca.dimension << "," << pca.components;
            pca_csv << "," << format_double(pca.eigenvalues[0]) << ","
                    << format_double(pca.eigenvalues[1]);
            for (std::size_t c = 0; c < 2; ++c) {
                const auto& s = pca.spread[c];
                for (double v : {s.min, s.q1, s.median, s.q3, s.max, s.iqr})
                    pca_csv << "," << format_double(v);
            }
            pca_csv << "\n";

            write_pca_scatter(report_dir / ("pca_scatter_" + trained + ".svg"), pca,
                              spear_flags);
            write_pca_box(report_dir / ("pca_box_" + trained + ".svg"), pca);
        } catch (const DegenerateData&) {
            pca_csv << trained << ",0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0\n";
        }
    }

    {
        auto out = open_out(report_dir / "accuracy_per_attack.csv");
        out << "attack,accuracy,tp_rate,fp_rate\n";
        for (std::size_t i = 0; i < kinds; ++i) {
            Rates r = rates(diagonal[i]);
            out << attack_kind_name(config.attacks[i]) << ","
                << format_double(matrix[i][i]) << "," << format_double(r.tp_rate)
                << "," << format_double(r.fp_rate) << "\n";
        }
    }
    {
        auto out = open_out(report_dir / "cross_attack.csv");
        out << "trained_on";
        for (std::size_t j = 0; j < kinds; ++j)
            out << "," << attack_kind_name(config.attacks[j]);
        out << "\n";
        for (std::size_t i = 0; i < kinds; ++i) {
            out << attack_kind_name(config.attacks[i]);
            for (std::size_t j = 0; j < kinds; ++j)
                out << "," << format_double(matrix[i][j]);
            out << "\n";
        }
    }
    write_cross_attack_chart(report_dir / "cross_attack.svg", config.attacks, matrix);
}

}  // namespace spearsift
