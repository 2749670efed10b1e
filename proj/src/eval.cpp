#include "spearsift/eval.hpp"

#include <algorithm>
#include <cmath>

#include "spearsift/errors.hpp"

namespace spearsift {

double accuracy(const ConfusionCounts& counts) {
    const std::uint64_t total = counts.total();
    if (total == 0) throw EmptyCounts("accuracy of an empty tally is undefined");
    return static_cast<double>(counts.tp + counts.tn) / static_cast<double>(total);
}

Rates rates(const ConfusionCounts& counts) {
    if (counts.tp + counts.fn == 0)
        throw DegenerateClass("no actual-spear items in the test set");
    if (counts.fp + counts.tn == 0)
        throw DegenerateClass("no actual-benign items in the test set");
    Rates r;
    r.tp_rate = static_cast<double>(counts.tp) /
                static_cast<double>(counts.tp + counts.fn);
    r.fp_rate = static_cast<double>(counts.fp) /
                static_cast<double>(counts.fp + counts.tn);
    return r;
}

ConfusionCounts tally_verdicts(const SenderProfileModel& model,
                               const Vocabulary& vocab, const FeatureSubset& subset,
                               const TestSet& items,
                               std::vector<VerdictRecord>* records) {
    ConfusionCounts counts;
    for (const LabeledEmail& item : items) {
        SpearVerdict verdict = detect_spear(model, item.email, vocab, subset);
        if (verdict.is_spear)
            ++(item.is_spear ? counts.tp : counts.fp);
        else
            ++(item.is_spear ? counts.fn : counts.tn);
        if (records)
            records->push_back({item.email.source_id, verdict.claimed_sender,
                                verdict.predicted_sender, verdict.is_spear,
                                item.is_spear});
    }
    return counts;
}

CrossAttackMatrix cross_attack(const RLConfig& config, const Corpus& train,
                               const std::array<TestSet, 3>& validation_sets,
                               const std::array<TestSet, 3>& test_sets) {
    CrossAttackMatrix matrix;
    for (AttackKind trained : kAllAttackKinds) {
        const std::size_t i = static_cast<std::size_t>(trained);
        RLConfig per_attack = config;
        per_attack.seed = derive_seed(
            config.seed, "select:" + std::string(attack_kind_name(trained)));
        SelectionResult selection =
            run_selection(per_attack, train, validation_sets[i]);

        Vocabulary vocab = build_vocabulary(train, selection.subset);
        std::vector<FeatureVector> vectors;
        std::vector<std::string> labels;
        for (const RawEmail& email : train.emails) {
            vectors.push_back(vectorize(email, vocab, selection.subset));
            labels.push_back(email.claimed_sender);
        }
        SenderProfileModel model = fit_profiles(std::move(vectors), std::move(labels),
                                                config.knn_k, config.distance);

        for (AttackKind tested : kAllAttackKinds) {
            const std::size_t j = static_cast<std::size_t>(tested);
            matrix.cell[i][j] =
                accuracy(tally_verdicts(model, vocab, selection.subset, test_sets[j]));
        }
    }
    return matrix;
}

namespace {

// Dense row-major sample matrix, already mean-centered.
struct CenteredSample {
    std::vector<double> data;  // n * d
    std::size_t n = 0;
    std::size_t d = 0;

    // y = (1 / (n - 1)) * X^T (X v), the covariance applied to v without
    // forming the d x d matrix.
    std::vector<double> covariance_times(const std::vector<double>& v) const {
        std::vector<double> xv(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = data.data() + i * d;
            double dot = 0.0;
            for (std::size_t j = 0; j < d; ++j) dot += row[j] * v[j];
            xv[i] = dot;
        }
        std::vector<double> y(d, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = data.data() + i * d;
            const double scale = xv[i];
            for (std::size_t j = 0; j < d; ++j) y[j] += scale * row[j];
        }
        const double denom = static_cast<double>(n - 1);
        for (double& value : y) value /= denom;
        return y;
    }
};

double vector_norm(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x * x;
    return std::sqrt(sum);
}

void subtract_projection(std::vector<double>& v, const std::vector<double>& axis) {
    double dot = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) dot += v[j] * axis[j];
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= dot * axis[j];
}

// Dominant eigenpair of the covariance restricted to the complement of
// `deflated` (empty for the first component). Returns the eigenvalue;
// the eigenvector lands in `v`.
double power_iteration(const CenteredSample& sample,
                       const std::vector<const std::vector<double>*>& deflated,
                       std::vector<double>& v) {
    const std::size_t d = sample.d;
    Rng rng(0x9c4cae2263d5011bull);  // fixed start, deterministic output
    v.assign(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) v[j] = rng.uniform01() - 0.5;
    for (const auto* axis : deflated) subtract_projection(v, *axis);
    double norm = vector_norm(v);
    if (norm == 0.0) return 0.0;
    for (double& x : v) x /= norm;

    double eigenvalue = 0.0;
    for (int iter = 0; iter < 20000; ++iter) {
        std::vector<double> w = sample.covariance_times(v);
        for (const auto* axis : deflated) subtract_projection(w, *axis);
        const double w_norm = vector_norm(w);
        if (w_norm == 0.0) return 0.0;
        double next = 0.0;
        for (std::size_t j = 0; j < d; ++j) next += v[j] * w[j];
        for (std::size_t j = 0; j < d; ++j) v[j] = w[j] / w_norm;
        if (iter > 0 && std::abs(next - eigenvalue) <=
                            1e-14 * std::max(1.0, std::abs(next))) {
            eigenvalue = next;
            break;
        }
        eigenvalue = next;
    }
    // Sign convention: largest-magnitude coordinate is positive.
    std::size_t arg = 0;
    for (std::size_t j = 1; j < d; ++j)
        if (std::abs(v[j]) > std::abs(v[arg])) arg = j;
    if (v[arg] < 0.0)
        for (double& x : v) x = -x;
    return eigenvalue;
}

PcaSummary::Spread spread_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(values.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, values.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return values[lo] * (1.0 - frac) + values[hi] * frac;
    };
    PcaSummary::Spread s;
    s.min = values.front();
    s.max = values.back();
    s.q1 = quantile(0.25);
    s.median = quantile(0.5);
    s.q3 = quantile(0.75);
    s.iqr = s.q3 - s.q1;
    return s;
}

}  // namespace

PcaSummary pca_2d(const std::vector<FeatureVector>& vectors, std::size_t max_samples) {
    if (vectors.size() < 3)
        throw DegenerateData("pca_2d needs at least 3 vectors");
    const std::size_t n = std::min(vectors.size(), max_samples);
    const std::size_t d = vectors.front().dimension;
    if (d < 2) throw DegenerateData("pca_2d needs dimension >= 2");
    for (std::size_t i = 0; i < n; ++i)
        if (vectors[i].dimension != d)
            throw DimensionMismatch("pca_2d input vectors disagree on dimension");

    PcaSummary summary;
    summary.dimension = d;
    summary.mean.assign(d, 0.0);

    CenteredSample sample;
    sample.n = n;
    sample.d = d;
    sample.data.assign(n * d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [col, count] : vectors[i].entries)
            sample.data[i * d + col] = static_cast<double>(count);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) summary.mean[j] += sample.data[i * d + j];
    for (std::size_t j = 0; j < d; ++j) summary.mean[j] /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) sample.data[i * d + j] -= summary.mean[j];

    double total = 0.0;
    for (double x : sample.data) total += x * x;
    summary.total_variance = total / static_cast<double>(n - 1);

    const double rank_eps = 1e-12 * std::max(1.0, summary.total_variance);
    std::vector<const std::vector<double>*> deflated;
    for (std::size_t c = 0; c < 2; ++c) {
        std::vector<double> axis;
        const double eigenvalue = power_iteration(sample, deflated, axis);
        if (eigenvalue <= rank_eps) break;
        summary.axes[c] = std::move(axis);
        summary.eigenvalues[c] = eigenvalue;
        summary.components = c + 1;
        deflated.push_back(&summary.axes[c]);
    }
    summary.degenerate = summary.components < 2;

    summary.projections.assign(n, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = sample.data.data() + i * d;
        for (std::size_t c = 0; c < summary.components; ++c) {
            double dot = 0.0;
            for (std::size_t j = 0; j < d; ++j) dot += row[j] * summary.axes[c][j];
            summary.projections[i][c] = dot;
        }
    }

    for (std::size_t c = 0; c < summary.components; ++c) {
        std::vector<double> values(n);
        for (std::size_t i = 0; i < n; ++i) values[i] = summary.projections[i][c];
        summary.spread[c] = spread_of(std::move(values));
    }
    return summary;
}

}  // namespace spearsift
