#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "spearsift/corpus.hpp"
#include "spearsift/rl_select.hpp"

namespace spearsift {

struct CorpusSource {
    std::filesystem::path path;
    CorpusFormat format = CorpusFormat::eml_dir;
};

// Everything one end-to-end run needs. One seed drives splitting, forging,
// selection and reporting; the config hash embedded in artifacts covers all
// semantic fields (the output directory is deliberately excluded so runs
// into different directories stay comparable).
struct PipelineConfig {
    std::vector<CorpusSource> sources;
    double train_fraction = 0.6;
    double validation_fraction = 0.2;
    double test_fraction = 0.2;
    RLConfig rl;
    std::vector<AttackKind> attacks = {AttackKind::blind_spoofing,
                                       AttackKind::known_domain,
                                       AttackKind::known_sender};
    std::filesystem::path out_dir = "out";
    std::uint64_t seed = 42;
};

// key=value config file; '#' starts a comment. Unknown keys are rejected.
PipelineConfig load_pipeline_config(const std::filesystem::path& path);
void parse_config_line(PipelineConfig& config, const std::string& key,
                       const std::string& value);

// SPEARSIFT_OUT overrides the output directory; nothing else comes from the
// environment.
void apply_env_overrides(PipelineConfig& config);

void validate_config(const PipelineConfig& config);

std::string canonical_config(const PipelineConfig& config);
std::uint64_t config_hash(const PipelineConfig& config);

struct IngestSummary {
    std::size_t loaded = 0;
    std::size_t skipped = 0;
    std::size_t train = 0;
    std::size_t validation = 0;
    std::size_t test = 0;
};

// Loads every source, writes the load manifest, then splits the benign
// corpus per sender (largest-remainder allocation inside each sender's
// shuffled emails) into train/, validation/ and test/ .eml directories
// plus splits.csv.
IngestSummary cmd_ingest(const PipelineConfig& config);

// Writes the forged half of each attack's test set as an .eml directory
// plus a CSV manifest (file, donor id, attack kind, impersonated sender).
void cmd_forge(const PipelineConfig& config);

// Runs feature selection per requested attack kind and persists subset,
// table, selection log, vocabulary and model under out/select/<attack>/.
void cmd_select(const PipelineConfig& config);

// Prints "spear"/"benign" with the predicted and claimed sender. Returns
// the predict exit code: 0 benign, 1 spear (2, for errors, is assigned by
// the CLI wrapper).
int cmd_predict(const std::filesystem::path& artifacts_dir,
                const std::filesystem::path& email_path, std::ostream& out);

// Evaluates every selected subset against every attack's test set: writes
// accuracy_per_attack.csv, cross_attack.csv, verdict logs, PCA summaries
// and SVG plots under out/report/.
void cmd_report(const PipelineConfig& config);

// Split helper, exposed for tests: sender-stratified, seeded split of a
// benign corpus into train/validation/test index lists.
struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> validation;
    std::vector<std::size_t> test;
};
SplitIndices stratified_split(const Corpus& corpus, double train_fraction,
                              double validation_fraction, double test_fraction,
                              std::uint64_t seed);

}  // namespace spearsift
