#pragma once

#include <filesystem>
#include <vector>

#include "spearsift/email.hpp"
#include "spearsift/eval.hpp"

namespace spearsift {

// PC1/PC2 scatter; spear items are drawn in red, benign in blue.
void write_pca_scatter(const std::filesystem::path& path, const PcaSummary& pca,
                       const std::vector<bool>& spear_flags);

// Boxplot of the two principal-component spreads.
void write_pca_box(const std::filesystem::path& path, const PcaSummary& pca);

// Grouped bars: one group per trained-on attack, one bar per tested attack.
void write_cross_attack_chart(const std::filesystem::path& path,
                              const std::vector<AttackKind>& attacks,
                              const std::vector<std::vector<double>>& matrix);

}  // namespace spearsift
