#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spearsift/email.hpp"
#include "spearsift/forge.hpp"
#include "spearsift/knn.hpp"
#include "spearsift/rng.hpp"
#include "spearsift/vectorize.hpp"

namespace spearsift {

// Per-feature running Average of Rewards and the number of times the
// feature was credited. uses == 0 implies aor == 0.
struct AorEntry {
    double aor = 0.0;
    std::uint64_t uses = 0;
};

using FeatureTable = std::map<FeatureId, AorEntry>;

struct RLConfig {
    double epsilon = 0.3;
    std::size_t rounds = 50;
    std::size_t steps_per_round = 10;
    std::size_t knn_k = 3;
    Distance distance = Distance::cosine;
    std::uint64_t seed = 0;
};

// The episode state: the working subset and its validation accuracy. The
// empty subset has accuracy 0 by definition.
struct EpisodeState {
    FeatureSubset subset;
    double accuracy = 0.0;
};

// Folds one more reward into a running average:
// new = [(uses_after - 1) * old + reward] / uses_after.
double aor_update(double old_aor, std::uint64_t uses_after, double reward);

// Epsilon-greedy choice among the features not yet in the subset: a
// uniformly random one with probability epsilon, otherwise the one with the
// highest AOR (ties go to the lexicographically smallest name).
FeatureId select_action(const FeatureTable& table, const FeatureSubset& subset,
                        double epsilon, Rng& rng);

// Detector accuracy of a subset: trains KNN sender profiles on the benign
// corpus and scores spear verdicts against the validation list. The empty
// subset scores 0.
double subset_accuracy(const FeatureSubset& subset, const RLConfig& config,
                       const Corpus& train, const TestSet& validation);

// Memoized subset -> accuracy; accuracy is a pure function of the subset
// for a fixed train/validation pair.
using AccuracyCache = std::map<std::string, double>;

struct StepRecord {
    std::size_t round = 0;
    std::size_t step = 0;
    FeatureId feature;
    double reward = 0.0;
    double accuracy = 0.0;
};

struct StepOutcome {
    FeatureId feature;
    double reward = 0.0;
    double accuracy = 0.0;
};

// One step: select a feature, add it to the subset, rebuild the model and
// re-score, then credit the reward (accuracy delta) to that feature. A
// zero delta leaves the table entry untouched.
StepOutcome run_step(EpisodeState& state, FeatureTable& table,
                     const RLConfig& config, const Corpus& train,
                     const TestSet& validation, Rng& rng,
                     AccuracyCache* cache = nullptr);

// One round: steps_per_round steps from a fresh empty subset. The subset is
// discarded afterwards; the table persists.
void run_round(FeatureTable& table, const RLConfig& config, const Corpus& train,
               const TestSet& validation, Rng& rng, std::size_t round_index,
               std::vector<StepRecord>* log, AccuracyCache* cache = nullptr);

// Final subset: every feature used at least once with a strictly positive
// AOR. Throws EmptyResult when nothing qualifies.
FeatureSubset generate_subset(const FeatureTable& table);

struct SelectionResult {
    FeatureSubset subset;
    FeatureTable table;
    std::vector<StepRecord> log;
};

// Full selection: `rounds` rounds over the raw features of `train`, then
// subset generation.
SelectionResult run_selection(const RLConfig& config, const Corpus& train,
                              const TestSet& validation);

}  // namespace spearsift
