#pragma once

#include <optional>
#include <string>
#include <vector>

namespace vchild::stats {

/// Per-subject scores under two conditions. Differences are `a - b`.
struct PairedSample {
  std::vector<double> a;
  std::vector<double> b;

  std::size_t size() const noexcept { return a.size(); }
  std::vector<double> differences() const;
  /// Throws InvalidInput unless sizes match, n >= 2 and every value is finite.
  void check() const;
};

struct PosteriorSummary {
  double point = 0.0;           // posterior mean
  double posterior_prob = 0.0;  // P(effect > reference)
  double reference = 0.0;
  double hdi_low = 0.0;
  double hdi_high = 0.0;
  std::optional<double> t_stat;  // (mean - reference) / scale
  std::optional<double> df;
  std::optional<double> scale;
};

double mean(const std::vector<double>& xs);
/// Sample standard deviation (n - 1 denominator).
double sample_sd(const std::vector<double>& xs);

/// Paired comparison under the reference prior p(mu, sigma) ~ 1/sigma: the
/// posterior of the mean difference is Student-t with centre mean(d),
/// scale sd(d)/sqrt(n) and n - 1 degrees of freedom. The 95% HDI of that
/// symmetric posterior is the equal-tailed interval.
/// Throws ZeroVarianceDifferences when all differences are identical.
PosteriorSummary bayes_paired_t(const PairedSample& sample, double reference = 0.0);

/// Non-inferiority against the margin -margin_factor * sd(all scores), where
/// all scores pools both conditions.
PosteriorSummary noninferiority(const PairedSample& sample, double margin_factor = 0.1);

/// Uniform Beta(1,1) prior on the success rate; posterior Beta(k+1, n-k+1).
/// The interval is the central 95% posterior interval. Throws BadCounts.
PosteriorSummary bayes_binomial(long k, long n, double p0 = 0.5);

/// One rating in long format.
struct Rating {
  std::string item;
  std::string coder;
  std::string condition;
  double score = 0.0;
};

/// Averages each item's ratings across coders per condition, then pairs the
/// two conditions by item (items ordered by id). Items missing a condition
/// are dropped. Throws InvalidInput when a condition name is absent.
PairedSample aggregate_coder_ratings(const std::vector<Rating>& ratings, const std::string& condition_a,
                                     const std::string& condition_b);

}  // namespace vchild::stats
