#include "spearsift/artifacts.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "spearsift/errors.hpp"

namespace spearsift {

std::string format_double(double value) {
    char buf[64];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
        if (std::strtod(buf, nullptr) == value) return buf;
    }
    return buf;
}

std::string hash_hex(std::uint64_t hash) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

void write_header(std::ofstream& out, std::string_view magic,
                  std::uint64_t config_hash) {
    out << "# spearsift " << magic << "\n";
    out << "# config_hash=" << hash_hex(config_hash) << "\n";
}

// Validates the magic and hash lines; returns the index of the first data
// line and reports the stored hash.
std::size_t check_header(const std::vector<std::string>& lines,
                         const std::filesystem::path& path, std::string_view magic,
                         std::uint64_t expected_hash, std::uint64_t* found_hash) {
    if (lines.size() < 2 || lines[0] != "# spearsift " + std::string(magic))
        throw ArtifactMismatch(path.string() + " is not a spearsift " +
                               std::string(magic) + " file");
    constexpr std::string_view prefix = "# config_hash=";
    if (lines[1].rfind(prefix, 0) != 0)
        throw ArtifactMismatch(path.string() + " is missing its config hash");
    const std::uint64_t stored =
        std::strtoull(lines[1].c_str() + prefix.size(), nullptr, 16);
    if (found_hash) *found_hash = stored;
    if (expected_hash != kAnyConfigHash && stored != expected_hash)
        throw ArtifactMismatch(path.string() + " was produced under config " +
                               hash_hex(stored) + ", expected " +
                               hash_hex(expected_hash));
    return 2;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            parts.push_back(line.substr(start));
            break;
        }
        parts.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return parts;
}

}  // namespace

void save_subset(const std::filesystem::path& path, const FeatureSubset& subset,
                 std::uint64_t config_hash) {
    auto out = open_out(path);
    write_header(out, "subset", config_hash);
    for (const FeatureId& feature : subset) out << feature << "\n";
}

FeatureSubset load_subset(const std::filesystem::path& path,
                          std::uint64_t expected_hash, std::uint64_t* found_hash) {
    const auto lines = read_lines(path);
    std::size_t i = check_header(lines, path, "subset", expected_hash, found_hash);
    FeatureSubset subset;
    for (; i < lines.size(); ++i)
        if (!lines[i].empty()) subset.insert(lines[i]);
    return subset;
}

void save_table(const std::filesystem::path& path, const FeatureTable& table,
                std::uint64_t config_hash) {
    auto out = open_out(path);
    write_header(out, "feature table", config_hash);
    for (const auto& [feature, entry] : table)
        out << feature << "\t" << format_double(entry.aor) << "\t" << entry.uses
            << "\n";
}

FeatureTable load_table(const std::filesystem::path& path,
                        std::uint64_t expected_hash) {
    const auto lines = read_lines(path);
    std::size_t i = check_header(lines, path, "feature table", expected_hash, nullptr);
    FeatureTable table;
    for (; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto parts = split_tabs(lines[i]);
        if (parts.size() != 3)
            throw ArtifactMismatch("bad table line in " + path.string());
        AorEntry entry;
        entry.aor = std::strtod(parts[1].c_str(), nullptr);
        entry.uses = std::strtoull(parts[2].c_str(), nullptr, 10);
        table.emplace(parts[0], entry);
    }
    return table;
}

void save_vocabulary(const std::filesystem::path& path, const Vocabulary& vocab,
                     std::uint64_t config_hash) {
    auto out = open_out(path);
    write_header(out, "vocabulary", config_hash);
    out << "# dimension=" << vocab.dimension << "\n";
    for (const auto& [feature, field] : vocab.fields)
        for (std::size_t local = 0; local < field.tokens.size(); ++local)
            out << feature << "\t" << field.tokens[local] << "\t"
                << field.offset + local << "\n";
}

Vocabulary load_vocabulary(const std::filesystem::path& path,
                           std::uint64_t expected_hash) {
    const auto lines = read_lines(path);
    std::size_t i = check_header(lines, path, "vocabulary", expected_hash, nullptr);
    if (i >= lines.size() || lines[i].rfind("# dimension=", 0) != 0)
        throw ArtifactMismatch(path.string() + " is missing its dimension");
    const std::size_t dimension = std::strtoull(lines[i].c_str() + 12, nullptr, 10);
    ++i;

    Vocabulary vocab;
    for (; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto parts = split_tabs(lines[i]);
        if (parts.size() != 3)
            throw ArtifactMismatch("bad vocabulary line in " + path.string());
        const std::size_t column = std::strtoull(parts[2].c_str(), nullptr, 10);
        Vocabulary::Field& field = vocab.fields[parts[0]];
        if (field.tokens.empty()) field.offset = column;
        if (column != field.offset + field.tokens.size())
            throw ArtifactMismatch("non-contiguous columns in " + path.string());
        field.index.emplace(parts[1], static_cast<std::uint32_t>(field.tokens.size()));
        field.tokens.push_back(parts[1]);
    }
    vocab.dimension = dimension;

    std::size_t counted = 0;
    for (const auto& [feature, field] : vocab.fields) counted += field.tokens.size();
    if (counted != dimension)
        throw ArtifactMismatch(path.string() + " token count disagrees with dimension");
    return vocab;
}

void save_model(const std::filesystem::path& path, const SenderProfileModel& model,
                std::uint64_t config_hash) {
    auto out = open_out(path);
    write_header(out, "model", config_hash);
    out << "# k=" << model.k << "\n";
    out << "# distance=" << distance_name(model.distance) << "\n";
    out << "# dimension=" << model.dimension << "\n";
    for (std::size_t i = 0; i < model.vectors.size(); ++i) {
        out << model.labels[i];
        for (const auto& [col, count] : model.vectors[i].entries)
            out << "\t" << col << ":" << count;
        out << "\n";
    }
}

SenderProfileModel load_model(const std::filesystem::path& path,
                              std::uint64_t expected_hash) {
    const auto lines = read_lines(path);
    std::size_t i = check_header(lines, path, "model", expected_hash, nullptr);
    auto meta = [&](std::string_view prefix) -> std::string {
        if (i >= lines.size() || lines[i].rfind(prefix, 0) != 0)
            throw ArtifactMismatch(path.string() + " is missing " + std::string(prefix));
        return lines[i++].substr(prefix.size());
    };
    const std::size_t k = std::strtoull(meta("# k=").c_str(), nullptr, 10);
    const Distance distance = distance_from_name(meta("# distance="));
    const std::size_t dimension = std::strtoull(meta("# dimension=").c_str(), nullptr, 10);

    std::vector<FeatureVector> vectors;
    std::vector<std::string> labels;
    for (; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto parts = split_tabs(lines[i]);
        labels.push_back(parts[0]);
        FeatureVector vec;
        vec.dimension = dimension;
        for (std::size_t p = 1; p < parts.size(); ++p) {
            std::size_t colon = parts[p].find(':');
            if (colon == std::string::npos)
                throw ArtifactMismatch("bad model entry in " + path.string());
            vec.entries.emplace_back(
                static_cast<std::uint32_t>(std::strtoul(parts[p].c_str(), nullptr, 10)),
                static_cast<std::uint32_t>(
                    std::strtoul(parts[p].c_str() + colon + 1, nullptr, 10)));
        }
        vectors.push_back(std::move(vec));
    }
    return fit_profiles(std::move(vectors), std::move(labels), k, distance);
}

void save_selection_log(const std::filesystem::path& path,
                        const std::vector<StepRecord>& log) {
    auto out = open_out(path);
    out << "round,step,feature,reward,accuracy\n";
    for (const StepRecord& record : log)
        out << record.round << "," << record.step << "," << record.feature << ","
            << format_double(record.reward) << "," << format_double(record.accuracy)
            << "\n";
}

void save_verdicts(const std::filesystem::path& path,
                   const std::vector<VerdictRecord>& records) {
    auto out = open_out(path);
    out << "source_id,claimed_sender,predicted_sender,verdict,truth\n";
    for (const VerdictRecord& r : records)
        out << r.source_id << "," << r.claimed_sender << "," << r.predicted_sender
            << "," << (r.is_spear ? "spear" : "benign") << ","
            << (r.truth_spear ? "spear" : "benign") << "\n";
}

std::vector<VerdictRecord> load_verdicts(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.empty()) throw ArtifactMismatch(path.string() + " is empty");
    std::vector<VerdictRecord> records;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        std::vector<std::string> parts;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = lines[i].find(',', start);
            if (comma == std::string::npos) {
                parts.push_back(lines[i].substr(start));
                break;
            }
            parts.push_back(lines[i].substr(start, comma - start));
            start = comma + 1;
        }
        if (parts.size() != 5)
            throw ArtifactMismatch("bad verdict line in " + path.string());
        records.push_back({parts[0], parts[1], parts[2], parts[3] == "spear",
                           parts[4] == "spear"});
    }
    return records;
}

}  // namespace spearsift
