#pragma once

// Independent reference computations used to check the library. None of
// these call into the code under test.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace vchild::oracle {

/// Composite Simpson rule on [a, b] with `n` (even) panels.
double simpson(const std::function<double(double)>& f, double a, double b, int n = 200000);

/// Student-t density with `df` degrees of freedom, via lgamma.
double t_pdf(double x, double df);

/// P(X <= x) for the standard t, by integrating the density under x = tan(theta).
double t_cdf(double x, double df);

/// Inverse of t_cdf by bisection.
double t_quantile(double p, double df);

/// Narrowest 95% interval of centre + scale * T(df), found from the
/// equal-density condition rather than symmetry.
std::pair<double, double> t_hdi(double centre, double scale, double df, double mass = 0.95);

double beta_pdf(double x, double a, double b);
double beta_cdf(double x, double a, double b);
double beta_quantile(double p, double a, double b);

/// Differences with exactly the given mean and the sd that yields t-statistic
/// `t` for n values, added onto a random baseline. Returns (a, b).
std::pair<std::vector<double>, std::vector<double>> paired_with_t(double mean_diff, double t, int n,
                                                                  std::uint64_t seed);

/// Padded character trigrams of lowercased alphanumeric text.
std::set<std::string> trigram_set(const std::string& text);
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

/// Every record ranked by (L2 distance, index) with a plain full sort.
std::vector<std::pair<double, std::size_t>> brute_force_rank(const std::vector<std::vector<float>>& rows,
                                                             const std::vector<float>& query);

/// Fleiss' kappa straight from the textbook formula.
double fleiss(const std::vector<std::vector<int>>& counts);

/// Apply-then-clamp fold of belief effects.
std::map<std::string, double> fold_effects(std::map<std::string, double> beliefs,
                                           const std::vector<std::vector<std::pair<std::string, double>>>& steps);

/// Position one past the last '.', '!' or '?' at index < cap, or 0 when none.
std::size_t last_sentence_end(const std::string& text, std::size_t cap);

}  // namespace vchild::oracle
