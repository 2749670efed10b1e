#include "spearsift/vectorize.hpp"

#include <algorithm>
#include <cmath>

#include "spearsift/errors.hpp"

namespace spearsift {

namespace {

bool token_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '@' ||
           c == '.' || c == '-';
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char raw : text) {
        char c = (raw >= 'A' && raw <= 'Z') ? static_cast<char>(raw + ('a' - 'A')) : raw;
        if (token_char(c)) {
            current.push_back(c);
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::optional<std::size_t> Vocabulary::column(const FeatureId& field,
                                              const std::string& token) const {
    auto f = fields.find(field);
    if (f == fields.end()) return std::nullopt;
    auto t = f->second.index.find(token);
    if (t == f->second.index.end()) return std::nullopt;
    return f->second.offset + t->second;
}

double FeatureVector::norm() const {
    double sum = 0.0;
    for (const auto& [col, count] : entries)
        sum += static_cast<double>(count) * static_cast<double>(count);
    return std::sqrt(sum);
}

Vocabulary build_vocabulary(const Corpus& training, const FeatureSubset& subset) {
    if (subset.empty()) throw EmptySubset("cannot build a vocabulary over no features");

    Vocabulary vocab;
    for (const FeatureId& feature : subset) {
        Vocabulary::Field field;
        for (const RawEmail& email : training.emails) {
            for_each_field_value(email, feature, [&](std::string_view text) {
                for (std::string& token : tokenize(text)) {
                    if (field.index.emplace(token, field.tokens.size()).second)
                        field.tokens.push_back(std::move(token));
                }
            });
        }
        field.offset = vocab.dimension;
        vocab.dimension += field.tokens.size();
        vocab.fields.emplace(feature, std::move(field));
    }
    return vocab;
}

FeatureVector vectorize(const RawEmail& email, const Vocabulary& vocab,
                        const FeatureSubset& subset) {
    FeatureVector vec;
    vec.dimension = vocab.dimension;
    for (const FeatureId& feature : subset) {
        auto f = vocab.fields.find(feature);
        if (f == vocab.fields.end()) continue;
        const Vocabulary::Field& field = f->second;

        std::map<std::uint32_t, std::uint32_t> counts;  // local column -> count
        for_each_field_value(email, feature, [&](std::string_view text) {
            for (const std::string& token : tokenize(text)) {
                auto t = field.index.find(token);
                if (t != field.index.end()) ++counts[t->second];
            }
        });
        for (const auto& [local, count] : counts)
            vec.entries.emplace_back(static_cast<std::uint32_t>(field.offset + local),
                                     count);
    }
    return vec;
}

std::vector<FeatureId> raw_features(const Corpus& corpus) {
    std::set<FeatureId> names;
    names.insert(std::string(kBodyFeature));
    for (const RawEmail& email : corpus.emails)
        for (const auto& [name, value] : email.headers) names.insert(name);
    return {names.begin(), names.end()};
}

}  // namespace spearsift
