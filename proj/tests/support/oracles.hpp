#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spearsift/knn.hpp"
#include "spearsift/vectorize.hpp"

namespace spearsift::oracles {

// Independent line-by-line header counter: counts non-continuation lines
// containing ':' before the first blank line.
std::size_t reference_header_count(std::string_view raw);

// Independent addr-spec extraction built on a different strategy (regex
// over the angle-bracket form, then token scan).
std::optional<std::string> reference_extract_address(const std::string& from_value);

// Regex-based tokenizer implementing the same character classes.
std::vector<std::string> reference_tokenize(const std::string& text);

// Exhaustive brute-force KNN with the same tie rules: full sort of
// (distance, label) pairs over densified vectors, majority vote, ties by
// summed distance then lexicographically smallest label.
std::string knn_oracle_predict(const std::vector<FeatureVector>& vectors,
                               const std::vector<std::string>& labels,
                               std::size_t k, Distance distance,
                               const FeatureVector& query);

// Full eigen-decomposition of a symmetric matrix by the cyclic Jacobi
// method. Returns eigenvalues in descending order.
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> matrix);

// Naively computed covariance of densified vectors (divides by n - 1).
std::vector<std::vector<double>> dense_covariance(
    const std::vector<FeatureVector>& vectors);

}  // namespace spearsift::oracles
