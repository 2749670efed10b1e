#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <regex>

namespace spearsift::oracles {

std::size_t reference_header_count(std::string_view raw) {
    std::size_t count = 0;
    std::size_t start = 0;
    while (start <= raw.size()) {
        std::size_t nl = raw.find('\n', start);
        std::string_view line = raw.substr(
            start, nl == std::string_view::npos ? raw.size() - start : nl - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) break;
        const bool continuation = line.front() == ' ' || line.front() == '\t';
        if (!continuation) {
            std::size_t colon = line.find(':');
            if (colon != std::string_view::npos && colon > 0) {
                // Name must be non-blank after trimming.
                std::string_view name = line.substr(0, colon);
                while (!name.empty() && (name.back() == ' ' || name.back() == '\t'))
                    name.remove_suffix(1);
                if (!name.empty()) ++count;
            }
        }
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    return count;
}

std::optional<std::string> reference_extract_address(const std::string& from_value) {
    auto finish = [](std::string candidate) -> std::optional<std::string> {
        for (char& c : candidate)
            if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
        const std::size_t at = candidate.find('@');
        if (at == std::string::npos || at == 0 || at + 1 == candidate.size())
            return std::nullopt;
        if (candidate.find('@', at + 1) != std::string::npos) return std::nullopt;
        return candidate;
    };

    static const std::regex angle(R"(<([^<>]*)>)");
    std::smatch match;
    std::string last_inside;
    auto begin = std::sregex_iterator(from_value.begin(), from_value.end(), angle);
    for (auto it = begin; it != std::sregex_iterator(); ++it)
        last_inside = (*it)[1].str();
    if (!last_inside.empty()) {
        static const std::regex strip(R"(^[\s"'(<]+|[\s"')>,;.]+$)");
        std::string candidate = std::regex_replace(last_inside, strip, "");
        if (auto addr = finish(candidate)) return addr;
    }

    static const std::regex token_re(R"([^\s,;]+)");
    for (auto it = std::sregex_iterator(from_value.begin(), from_value.end(), token_re);
         it != std::sregex_iterator(); ++it) {
        static const std::regex strip(R"(^[\s"'(<]+|[\s"')>,;.]+$)");
        std::string candidate = std::regex_replace(it->str(), strip, "");
        if (auto addr = finish(candidate)) return addr;
    }
    return std::nullopt;
}

std::vector<std::string> reference_tokenize(const std::string& text) {
    std::string lowered = text;
    for (char& c : lowered)
        if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
    static const std::regex token_re(R"([a-z0-9@.\-]+)");
    std::vector<std::string> tokens;
    for (auto it = std::sregex_iterator(lowered.begin(), lowered.end(), token_re);
         it != std::sregex_iterator(); ++it)
        tokens.push_back(it->str());
    return tokens;
}

namespace {

std::vector<double> densify(const FeatureVector& v) {
    std::vector<double> dense(v.dimension, 0.0);
    for (const auto& [col, count] : v.entries) dense[col] = count;
    return dense;
}

double oracle_distance(const std::vector<double>& a, const std::vector<double>& b,
                       Distance distance) {
    if (distance == Distance::euclidean) {
        double sum = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double diff = a[i] - b[i];
            sum += diff * diff;
        }
        return std::sqrt(sum);
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    na = std::sqrt(na);
    nb = std::sqrt(nb);
    if (na == 0.0 && nb == 0.0) return 0.0;
    if (na == 0.0 || nb == 0.0) return 1.0;
    return 1.0 - dot / (na * nb);
}

}  // namespace

std::string knn_oracle_predict(const std::vector<FeatureVector>& vectors,
                               const std::vector<std::string>& labels,
                               std::size_t k, Distance distance,
                               const FeatureVector& query) {
    const std::vector<double> dense_query = densify(query);
    std::vector<std::pair<double, std::string>> ranked;
    for (std::size_t i = 0; i < vectors.size(); ++i)
        ranked.emplace_back(
            oracle_distance(dense_query, densify(vectors[i]), distance), labels[i]);
    std::sort(ranked.begin(), ranked.end());

    std::map<std::string, std::size_t> counts;
    std::map<std::string, double> sums;
    for (std::size_t i = 0; i < k; ++i) {
        counts[ranked[i].second] += 1;
        sums[ranked[i].second] += ranked[i].first;
    }
    std::string winner;
    for (const auto& [label, count] : counts) {
        if (winner.empty()) {
            winner = label;
            continue;
        }
        const std::size_t best = counts[winner];
        if (count > best ||
            (count == best && sums[label] < sums[winner]))
            winner = label;
    }
    return winner;
}

std::vector<std::vector<double>> dense_covariance(
    const std::vector<FeatureVector>& vectors) {
    const std::size_t n = vectors.size();
    const std::size_t d = vectors.front().dimension;
    std::vector<std::vector<double>> rows;
    for (const FeatureVector& v : vectors) rows.push_back(densify(v));

    std::vector<double> mean(d, 0.0);
    for (const auto& row : rows)
        for (std::size_t j = 0; j < d; ++j) mean[j] += row[j];
    for (std::size_t j = 0; j < d; ++j) mean[j] /= static_cast<double>(n);
    for (auto& row : rows)
        for (std::size_t j = 0; j < d; ++j) row[j] -= mean[j];

    std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
    for (const auto& row : rows)
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) cov[a][b] += row[a] * row[b];
    for (auto& cov_row : cov)
        for (double& value : cov_row) value /= static_cast<double>(n - 1);
    return cov;
}

std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> m) {
    const std::size_t d = m.size();
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q) off += m[p][q] * m[p][q];
        if (off < 1e-24) break;

        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                if (m[p][q] == 0.0) continue;
                const double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t i = 0; i < d; ++i) {
                    const double mip = m[i][p];
                    const double miq = m[i][q];
                    m[i][p] = c * mip - s * miq;
                    m[i][q] = s * mip + c * miq;
                }
                for (std::size_t i = 0; i < d; ++i) {
                    const double mpi = m[p][i];
                    const double mqi = m[q][i];
                    m[p][i] = c * mpi - s * mqi;
                    m[q][i] = s * mpi + c * mqi;
                }
            }
        }
    }
    std::vector<double> eigenvalues(d);
    for (std::size_t i = 0; i < d; ++i) eigenvalues[i] = m[i][i];
    std::sort(eigenvalues.rbegin(), eigenvalues.rend());
    return eigenvalues;
}

}  // namespace spearsift::oracles
