#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "spearsift/eval.hpp"
#include "spearsift/knn.hpp"
#include "spearsift/rl_select.hpp"
#include "spearsift/vectorize.hpp"

namespace spearsift {

// Text persistence for every trained artifact. Each file starts with a
// magic line and a config-hash line; loaders refuse files whose hash does
// not match the expected one (pass kAnyConfigHash to skip the check and
// read whatever is there).
inline constexpr std::uint64_t kAnyConfigHash = 0;

std::string hash_hex(std::uint64_t hash);

void save_subset(const std::filesystem::path& path, const FeatureSubset& subset,
                 std::uint64_t config_hash);
FeatureSubset load_subset(const std::filesystem::path& path,
                          std::uint64_t expected_hash,
                          std::uint64_t* found_hash = nullptr);

void save_table(const std::filesystem::path& path, const FeatureTable& table,
                std::uint64_t config_hash);
FeatureTable load_table(const std::filesystem::path& path,
                        std::uint64_t expected_hash);

void save_vocabulary(const std::filesystem::path& path, const Vocabulary& vocab,
                     std::uint64_t config_hash);
Vocabulary load_vocabulary(const std::filesystem::path& path,
                           std::uint64_t expected_hash);

void save_model(const std::filesystem::path& path, const SenderProfileModel& model,
                std::uint64_t config_hash);
SenderProfileModel load_model(const std::filesystem::path& path,
                              std::uint64_t expected_hash);

void save_selection_log(const std::filesystem::path& path,
                        const std::vector<StepRecord>& log);

void save_verdicts(const std::filesystem::path& path,
                   const std::vector<VerdictRecord>& records);
std::vector<VerdictRecord> load_verdicts(const std::filesystem::path& path);

// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

}  // namespace spearsift
