#pragma once

#include <span>
#include <string>
#include <vector>

namespace vchild::stats {

/// Chance-corrected agreement between two raters over the same items.
/// Throws InvalidInput for mismatched or short inputs and
/// DegenerateMarginals when chance agreement is 1 without full agreement.
double cohen_kappa(std::span<const std::string> a, std::span<const std::string> b);

/// Items x categories tally; every row must sum to `raters` (>= 2).
using CountMatrix = std::vector<std::vector<int>>;

double fleiss_kappa(const CountMatrix& counts, int raters);

/// Tallies an items x raters label table into counts over the sorted set of
/// labels seen.
CountMatrix tally_labels(const std::vector<std::vector<std::string>>& labels,
                         std::vector<std::string>* categories = nullptr);

/// ICC(2,1): two-way random effects, absolute agreement, single rater.
/// Rows are items, columns raters. A matrix whose cells are all equal has
/// no variance to explain and returns 1.0.
double icc(const std::vector<std::vector<double>>& ratings);

}  // namespace vchild::stats
