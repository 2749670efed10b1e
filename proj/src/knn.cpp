#include "spearsift/knn.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "spearsift/errors.hpp"

namespace spearsift {

std::string_view distance_name(Distance distance) {
    return distance == Distance::cosine ? "cosine" : "euclidean";
}

Distance distance_from_name(std::string_view name) {
    if (name == "cosine") return Distance::cosine;
    if (name == "euclidean") return Distance::euclidean;
    throw InvalidConfig("unknown distance: " + std::string(name));
}

namespace {

double sparse_dot(const FeatureVector& a, const FeatureVector& b) {
    double dot = 0.0;
    auto ia = a.entries.begin();
    auto ib = b.entries.begin();
    while (ia != a.entries.end() && ib != b.entries.end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            dot += static_cast<double>(ia->second) * static_cast<double>(ib->second);
            ++ia;
            ++ib;
        }
    }
    return dot;
}

double euclidean_distance(const FeatureVector& a, const FeatureVector& b) {
    double sum = 0.0;
    auto ia = a.entries.begin();
    auto ib = b.entries.begin();
    while (ia != a.entries.end() || ib != b.entries.end()) {
        double diff;
        if (ib == b.entries.end() ||
            (ia != a.entries.end() && ia->first < ib->first)) {
            diff = static_cast<double>(ia->second);
            ++ia;
        } else if (ia == a.entries.end() || ib->first < ia->first) {
            diff = static_cast<double>(ib->second);
            ++ib;
        } else {
            diff = static_cast<double>(ia->second) - static_cast<double>(ib->second);
            ++ia;
            ++ib;
        }
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

double cosine_distance(double dot, double norm_a, double norm_b) {
    if (norm_a == 0.0 && norm_b == 0.0) return 0.0;
    if (norm_a == 0.0 || norm_b == 0.0) return 1.0;
    return 1.0 - dot / (norm_a * norm_b);
}

}  // namespace

double distance_between(const FeatureVector& a, const FeatureVector& b,
                        Distance distance) {
    if (a.dimension != b.dimension)
        throw DimensionMismatch("vector dimensions differ: " +
                                std::to_string(a.dimension) + " vs " +
                                std::to_string(b.dimension));
    if (distance == Distance::euclidean) return euclidean_distance(a, b);
    return cosine_distance(sparse_dot(a, b), a.norm(), b.norm());
}

SenderProfileModel fit_profiles(std::vector<FeatureVector> vectors,
                                std::vector<std::string> labels, std::size_t k,
                                Distance distance) {
    if (vectors.size() != labels.size())
        throw LengthMismatch("got " + std::to_string(vectors.size()) +
                             " vectors and " + std::to_string(labels.size()) +
                             " labels");
    if (k == 0) throw KTooLarge("k must be at least 1");
    if (vectors.size() < k)
        throw KTooLarge("k=" + std::to_string(k) + " exceeds training size " +
                        std::to_string(vectors.size()));

    SenderProfileModel model;
    model.dimension = vectors.front().dimension;
    for (const FeatureVector& v : vectors)
        if (v.dimension != model.dimension)
            throw DimensionMismatch("training vectors disagree on dimension");
    model.norms.reserve(vectors.size());
    for (const FeatureVector& v : vectors) model.norms.push_back(v.norm());
    model.vectors = std::move(vectors);
    model.labels = std::move(labels);
    model.k = k;
    model.distance = distance;
    return model;
}

std::string predict_sender(const SenderProfileModel& model,
                           const FeatureVector& query) {
    if (query.dimension != model.dimension)
        throw DimensionMismatch("query dimension " + std::to_string(query.dimension) +
                                " does not match model dimension " +
                                std::to_string(model.dimension));

    const std::size_t n = model.vectors.size();
    std::vector<std::pair<double, const std::string*>> ranked;
    ranked.reserve(n);
    const double query_norm = query.norm();
    for (std::size_t i = 0; i < n; ++i) {
        double d;
        if (model.distance == Distance::cosine) {
            d = cosine_distance(sparse_dot(query, model.vectors[i]), query_norm,
                                model.norms[i]);
        } else {
            d = euclidean_distance(query, model.vectors[i]);
        }
        ranked.emplace_back(d, &model.labels[i]);
    }

    auto order = [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return *a.second < *b.second;
    };
    const std::size_t k = model.k;
    std::nth_element(ranked.begin(), ranked.begin() + (k - 1), ranked.end(), order);

    // Tally votes and summed distances per label over the k nearest.
    std::map<std::string_view, std::pair<std::size_t, double>> votes;
    for (std::size_t i = 0; i < k; ++i) {
        auto& entry = votes[*ranked[i].second];
        entry.first += 1;
        entry.second += ranked[i].first;
    }

    std::string_view best;
    std::size_t best_count = 0;
    double best_sum = 0.0;
    for (const auto& [label, tally] : votes) {
        const auto& [count, sum] = tally;
        bool wins = count > best_count ||
                    (count == best_count && sum < best_sum) ||
                    (count == best_count && sum == best_sum && label < best);
        if (best.empty() || wins) {
            best = label;
            best_count = count;
            best_sum = sum;
        }
    }
    return std::string(best);
}

SpearVerdict detect_spear(const SenderProfileModel& model, const RawEmail& email,
                          const Vocabulary& vocab, const FeatureSubset& subset) {
    if (vocab.dimension != model.dimension)
        throw DimensionMismatch("vocabulary dimension does not match model");
    SpearVerdict verdict;
    verdict.claimed_sender = email.claimed_sender;
    verdict.predicted_sender = predict_sender(model, vectorize(email, vocab, subset));
    verdict.is_spear = verdict.predicted_sender != verdict.claimed_sender;
    return verdict;
}

}  // namespace spearsift
