#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "spearsift/errors.hpp"
#include "spearsift/pipeline.hpp"

namespace {

// Flags shared by the pipeline subcommands. Flags override the config file,
// which overrides the defaults; SPEARSIFT_OUT overrides the output
// directory last.
struct CommonOptions {
    std::string config_path;
    std::vector<std::string> corpora;
    std::string out_dir;
    std::string attacks;
    std::string distance;
    double epsilon = -1.0;
    std::int64_t rounds = -1;
    std::int64_t steps = -1;
    std::int64_t knn_k = -1;
    std::int64_t seed = -1;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("-c,--config", opts.config_path, "key=value config file");
    cmd->add_option("--corpus", opts.corpora,
                    "corpus source as <format>:<path>; format is mbox, maildir or eml_dir");
    cmd->add_option("-o,--out", opts.out_dir, "output directory");
    cmd->add_option("--attacks", opts.attacks,
                    "comma-separated attack kinds to handle");
    cmd->add_option("--epsilon", opts.epsilon, "exploration rate in [0,1]");
    cmd->add_option("--rounds", opts.rounds, "selection rounds");
    cmd->add_option("--steps", opts.steps, "steps per round");
    cmd->add_option("--knn-k", opts.knn_k, "neighbors per vote");
    cmd->add_option("--distance", opts.distance, "cosine or euclidean");
    cmd->add_option("--seed", opts.seed, "master seed");
}

spearsift::PipelineConfig resolve_config(const CommonOptions& opts) {
    spearsift::PipelineConfig config;
    if (!opts.config_path.empty())
        config = spearsift::load_pipeline_config(opts.config_path);
    for (const std::string& corpus : opts.corpora)
        spearsift::parse_config_line(config, "corpus", corpus);
    if (!opts.out_dir.empty()) config.out_dir = opts.out_dir;
    if (!opts.attacks.empty())
        spearsift::parse_config_line(config, "attacks", opts.attacks);
    if (!opts.distance.empty())
        spearsift::parse_config_line(config, "rl.distance", opts.distance);
    if (opts.epsilon >= 0.0) config.rl.epsilon = opts.epsilon;
    if (opts.rounds >= 0) config.rl.rounds = static_cast<std::size_t>(opts.rounds);
    if (opts.steps >= 0) config.rl.steps_per_round = static_cast<std::size_t>(opts.steps);
    if (opts.knn_k >= 0) config.rl.knn_k = static_cast<std::size_t>(opts.knn_k);
    if (opts.seed >= 0) config.seed = static_cast<std::uint64_t>(opts.seed);
    spearsift::apply_env_overrides(config);
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spear-phishing detection toolkit: corpus ingestion, attack "
                 "forging, RL feature selection, KNN sender profiling, reports"};
    app.require_subcommand(1);

    CommonOptions opts;

    CLI::App* ingest = app.add_subcommand(
        "ingest", "load corpora, split per sender into train/validation/test");
    add_common_flags(ingest, opts);

    CLI::App* forge = app.add_subcommand(
        "forge", "write forged attack corpora as .eml directories with manifests");
    add_common_flags(forge, opts);

    CLI::App* select = app.add_subcommand(
        "select", "run feature selection and persist subset, table and model");
    add_common_flags(select, opts);

    CLI::App* report = app.add_subcommand(
        "report", "evaluate selected subsets: accuracy, cross-attack matrix, PCA");
    add_common_flags(report, opts);

    CLI::App* predict =
        app.add_subcommand("predict", "classify one .eml file; exit 0 benign, 1 "
                                      "spear, 2 error");
    std::string artifacts_dir;
    std::string email_path;
    predict->add_option("-a,--artifacts", artifacts_dir,
                        "directory with subset.txt, vocabulary.txt and model.txt")
        ->required();
    predict->add_option("email", email_path, "path of the email to classify")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (ingest->parsed()) {
            spearsift::IngestSummary summary = spearsift::cmd_ingest(resolve_config(opts));
            std::cout << "loaded " << summary.loaded << " emails (" << summary.skipped
                      << " skipped), split " << summary.train << "/"
                      << summary.validation << "/" << summary.test
                      << " train/validation/test\n";
        } else if (forge->parsed()) {
            spearsift::cmd_forge(resolve_config(opts));
            std::cout << "forged corpora written\n";
        } else if (select->parsed()) {
            spearsift::cmd_select(resolve_config(opts));
            std::cout << "selection artifacts written\n";
        } else if (report->parsed()) {
            spearsift::cmd_report(resolve_config(opts));
            std::cout << "report written\n";
        } else if (predict->parsed()) {
            return spearsift::cmd_predict(artifacts_dir, email_path, std::cout);
        }
    } catch (const spearsift::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return predict->parsed() ? 2 : 1;
    }
    return 0;
}
