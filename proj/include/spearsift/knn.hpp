#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "spearsift/email.hpp"
#include "spearsift/vectorize.hpp"

namespace spearsift {

enum class Distance { cosine, euclidean };

std::string_view distance_name(Distance distance);
Distance distance_from_name(std::string_view name);

// Multi-class KNN over benign training vectors labeled by sender address.
// Fitting just stores the data; all distances are computed at prediction
// time.
struct SenderProfileModel {
    std::vector<FeatureVector> vectors;
    std::vector<std::string> labels;
    std::size_t k = 3;
    Distance distance = Distance::cosine;
    std::size_t dimension = 0;
    std::vector<double> norms;  // cached training-vector norms
};

SenderProfileModel fit_profiles(std::vector<FeatureVector> vectors,
                                std::vector<std::string> labels, std::size_t k,
                                Distance distance);

// Distance between two sparse vectors. Cosine distance of a zero vector is
// 1 against anything nonzero and 0 against another zero vector.
double distance_between(const FeatureVector& a, const FeatureVector& b,
                        Distance distance);

// Majority vote among the k nearest training vectors. The k nearest are the
// first k under the total order (distance, label), which makes predictions
// independent of training order. Vote ties break by smallest summed
// distance among the tied labels, then lexicographically smallest label.
std::string predict_sender(const SenderProfileModel& model,
                           const FeatureVector& query);

struct SpearVerdict {
    std::string predicted_sender;
    std::string claimed_sender;
    bool is_spear = false;
};

// Vectorizes the email and flags a spear attack when the predicted sender
// disagrees with the claimed one.
SpearVerdict detect_spear(const SenderProfileModel& model, const RawEmail& email,
                          const Vocabulary& vocab, const FeatureSubset& subset);

}  // namespace spearsift
