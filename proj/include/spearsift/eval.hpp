#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "spearsift/forge.hpp"
#include "spearsift/knn.hpp"
#include "spearsift/rl_select.hpp"

namespace spearsift {

// Confusion counts with spear as the positive class.
struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const { return tp + tn + fp + fn; }
};

// (TP + TN) / (TP + FP + FN + TN). Throws EmptyCounts on an empty tally.
double accuracy(const ConfusionCounts& counts);

struct Rates {
    double tp_rate = 0.0;  // tp / (tp + fn)
    double fp_rate = 0.0;  // fp / (fp + tn)
};

// Throws DegenerateClass when either class is absent from the test set.
Rates rates(const ConfusionCounts& counts);

// One scored test item, as persisted in verdict logs.
struct VerdictRecord {
    std::string source_id;
    std::string claimed_sender;
    std::string predicted_sender;
    bool is_spear = false;
    bool truth_spear = false;
};

// Scores a test set against a fitted model; optionally records per-item
// verdicts.
ConfusionCounts tally_verdicts(const SenderProfileModel& model,
                               const Vocabulary& vocab, const FeatureSubset& subset,
                               const TestSet& items,
                               std::vector<VerdictRecord>* records = nullptr);

// cell[i][j] = accuracy of the detector whose features were selected
// against attack i, evaluated on the test set of attack j.
struct CrossAttackMatrix {
    std::array<std::array<double, 3>, 3> cell{};

    double at(AttackKind train, AttackKind test) const {
        return cell[static_cast<std::size_t>(train)][static_cast<std::size_t>(test)];
    }
};

// Zero-day protocol: per training attack kind, runs feature selection
// against that attack's validation set, then evaluates the resulting
// detector against all three test sets. Selection seeds are derived from
// config.seed per attack kind, so a fixed seed fixes the whole matrix.
CrossAttackMatrix cross_attack(const RLConfig& config, const Corpus& train,
                               const std::array<TestSet, 3>& validation_sets,
                               const std::array<TestSet, 3>& test_sets);

// Two-component PCA summary of a vector sample.
struct PcaSummary {
    struct Spread {
        double min = 0.0;
        double q1 = 0.0;
        double median = 0.0;
        double q3 = 0.0;
        double max = 0.0;
        double iqr = 0.0;
    };

    std::size_t dimension = 0;
    std::size_t components = 0;  // number of usable components (0..2)
    bool degenerate = false;     // rank < 2
    std::vector<double> mean;
    std::array<std::vector<double>, 2> axes;  // orthonormal eigenvectors
    std::array<double, 2> eigenvalues{};      // descending
    std::vector<std::array<double, 2>> projections;
    std::array<Spread, 2> spread{};
    double total_variance = 0.0;  // trace of the covariance
};

// Mean-centers the (densified) sample, extracts the top two eigenvectors of
// the covariance by power iteration with deflation, projects, and reports
// per-component spread. Throws DegenerateData when fewer than 3 vectors or
// fewer than 2 dimensions are supplied; a sample of rank < 2 is returned
// with the degenerate flag set instead.
PcaSummary pca_2d(const std::vector<FeatureVector>& vectors,
                  std::size_t max_samples = 2000);

}  // namespace spearsift
