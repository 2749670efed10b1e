#include "spearsift/report_plots.hpp"

#include <algorithm>
#include <cmath>

#include "spearsift/svg.hpp"

namespace spearsift {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 60.0;

struct Scale {
    double lo = 0.0;
    double hi = 1.0;
    double pixel_lo = 0.0;
    double pixel_hi = 1.0;

    double operator()(double v) const {
        if (hi == lo) return (pixel_lo + pixel_hi) / 2.0;
        return pixel_lo + (v - lo) / (hi - lo) * (pixel_hi - pixel_lo);
    }
};

}  // namespace

void write_pca_scatter(const std::filesystem::path& path, const PcaSummary& pca,
                       const std::vector<bool>& spear_flags) {
    SvgWriter svg(kWidth, kHeight);

    double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
    for (const auto& p : pca.projections) {
        x_lo = std::min(x_lo, p[0]);
        x_hi = std::max(x_hi, p[0]);
        y_lo = std::min(y_lo, p[1]);
        y_hi = std::max(y_hi, p[1]);
    }
    Scale x{x_lo, x_hi, kMargin, kWidth - kMargin};
    Scale y{y_lo, y_hi, kHeight - kMargin, kMargin};  // svg y grows downward

    svg.line(kMargin, kHeight - kMargin, kWidth - kMargin, kHeight - kMargin, "black");
    svg.line(kMargin, kHeight - kMargin, kMargin, kMargin, "black");
    svg.text(kWidth / 2, kHeight - kMargin / 3, "principal component 1", 12, "middle");
    svg.text(kMargin / 3, kHeight / 2, "PC2", 12, "middle");

    for (std::size_t i = 0; i < pca.projections.size(); ++i) {
        const bool spear = i < spear_flags.size() && spear_flags[i];
        svg.circle(x(pca.projections[i][0]), y(pca.projections[i][1]), 3.0,
                   spear ? "#d62728" : "#1f77b4");
    }
    svg.circle(kWidth - kMargin - 140, kMargin - 20, 4, "#1f77b4");
    svg.text(kWidth - kMargin - 130, kMargin - 16, "benign", 11);
    svg.circle(kWidth - kMargin - 60, kMargin - 20, 4, "#d62728");
    svg.text(kWidth - kMargin - 50, kMargin - 16, "spear", 11);
    svg.save(path);
}

void write_pca_box(const std::filesystem::path& path, const PcaSummary& pca) {
    SvgWriter svg(kWidth, kHeight);

    double lo = 0.0, hi = 0.0;
    for (std::size_t c = 0; c < pca.components; ++c) {
        lo = std::min(lo, pca.spread[c].min);
        hi = std::max(hi, pca.spread[c].max);
    }
    Scale y{lo, hi, kHeight - kMargin, kMargin};

    svg.line(kMargin, kHeight - kMargin, kWidth - kMargin, kHeight - kMargin, "black");
    svg.line(kMargin, kHeight - kMargin, kMargin, kMargin, "black");

    const double slot = (kWidth - 2 * kMargin) / 2.0;
    for (std::size_t c = 0; c < pca.components; ++c) {
        const auto& s = pca.spread[c];
        const double cx = kMargin + slot * (static_cast<double>(c) + 0.5);
        const double half = 50.0;
        svg.line(cx, y(s.min), cx, y(s.q1), "black");
        svg.line(cx, y(s.q3), cx, y(s.max), "black");
        svg.line(cx - half / 2, y(s.min), cx + half / 2, y(s.min), "black");
        svg.line(cx - half / 2, y(s.max), cx + half / 2, y(s.max), "black");
        svg.rect(cx - half, std::min(y(s.q1), y(s.q3)), 2 * half,
                 std::abs(y(s.q1) - y(s.q3)), "#aec7e8", "black");
        svg.line(cx - half, y(s.median), cx + half, y(s.median), "black", 2.0);
        svg.text(cx, kHeight - kMargin / 3,
                 "PC" + std::to_string(c + 1), 12, "middle");
    }
    svg.save(path);
}

void write_cross_attack_chart(const std::filesystem::path& path,
                              const std::vector<AttackKind>& attacks,
                              const std::vector<std::vector<double>>& matrix) {
    SvgWriter svg(kWidth, kHeight);
    const char* const colors[3] = {"#1f77b4", "#ff7f0e", "#2ca02c"};

    Scale y{0.0, 1.0, kHeight - kMargin, kMargin};
    svg.line(kMargin, kHeight - kMargin, kWidth - kMargin, kHeight - kMargin, "black");
    svg.line(kMargin, kHeight - kMargin, kMargin, kMargin, "black");
    for (int tick = 0; tick <= 10; tick += 2) {
        const double v = tick / 10.0;
        svg.line(kMargin - 4, y(v), kMargin, y(v), "black");
        svg.text(kMargin - 8, y(v) + 4, std::to_string(tick * 10) + "%", 10, "end");
    }

    const std::size_t groups = matrix.size();
    const double group_width = (kWidth - 2 * kMargin) / static_cast<double>(groups);
    for (std::size_t i = 0; i < groups; ++i) {
        const double gx = kMargin + group_width * static_cast<double>(i);
        const double bar = group_width / static_cast<double>(matrix[i].size() + 1);
        for (std::size_t j = 0; j < matrix[i].size(); ++j) {
            const double v = matrix[i][j];
            svg.rect(gx + bar * (static_cast<double>(j) + 0.5), y(v), bar * 0.9,
                     (kHeight - kMargin) - y(v), colors[j % 3]);
        }
        svg.text(gx + group_width / 2, kHeight - kMargin / 3,
                 "trained: " + std::string(attack_kind_name(attacks[i])), 11, "middle");
    }
    for (std::size_t j = 0; j < attacks.size() && j < 3; ++j) {
        svg.rect(kMargin + 140.0 * static_cast<double>(j), kMargin / 3, 10, 10,
                 colors[j]);
        svg.text(kMargin + 140.0 * static_cast<double>(j) + 14, kMargin / 3 + 9,
                 "tested: " + std::string(attack_kind_name(attacks[j])), 10);
    }
    svg.save(path);
}

}  // namespace spearsift
