#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "spearsift/email.hpp"

namespace spearsift {

// A raw feature is one lowercase header-field name, or "body".
using FeatureId = std::string;
using FeatureSubset = std::set<FeatureId>;

inline constexpr std::string_view kBodyFeature = "body";

// Lowercases and splits on any run of characters outside [a-z0-9@.-], so
// addresses, hostnames and IPs survive as single tokens.
std::vector<std::string> tokenize(std::string_view text);

// Per-field bag-of-words vocabulary. Fields occupy disjoint contiguous
// column ranges ordered lexicographically by field name; tokens within a
// field are numbered in first-occurrence order over the training corpus.
struct Vocabulary {
    struct Field {
        std::vector<std::string> tokens;  // local index -> token
        std::unordered_map<std::string, std::uint32_t> index;
        std::size_t offset = 0;
    };

    std::map<FeatureId, Field> fields;
    std::size_t dimension = 0;

    std::optional<std::size_t> column(const FeatureId& field,
                                      const std::string& token) const;
};

// Sparse token-count vector; entries sorted by column, counts >= 1.
struct FeatureVector {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;
    std::size_t dimension = 0;

    double norm() const;
};

Vocabulary build_vocabulary(const Corpus& training, const FeatureSubset& subset);

FeatureVector vectorize(const RawEmail& email, const Vocabulary& vocab,
                        const FeatureSubset& subset);

// All header-field names occurring in the corpus, plus "body". Sorted.
std::vector<FeatureId> raw_features(const Corpus& corpus);

// Applies fn to every text value the feature has in this email: each
// matching header value in arrival order, or the body for "body".
template <typename Fn>
void for_each_field_value(const RawEmail& email, const FeatureId& feature, Fn&& fn) {
    if (feature == kBodyFeature) {
        fn(std::string_view(email.body));
        return;
    }
    for (const auto& [name, value] : email.headers)
        if (name == feature) fn(std::string_view(value));
}

}  // namespace spearsift
