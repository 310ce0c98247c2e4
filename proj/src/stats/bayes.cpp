#include "vchild/stats/bayes.hpp"

#include <cmath>
#include <map>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "vchild/error.hpp"

namespace vchild::stats {

namespace bm = boost::math;

std::vector<double> PairedSample::differences() const {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

void PairedSample::check() const {
  if (a.size() != b.size()) throw Error(Errc::InvalidInput, "paired columns differ in length");
  if (a.size() < 2) throw Error(Errc::InvalidInput, "need at least 2 pairs");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i]) || !std::isfinite(b[i])) throw Error(Errc::InvalidInput, "non-finite score");
  }
}

double mean(const std::vector<double>& xs) {
  if (xs.empty()) throw Error(Errc::InvalidInput, "mean of empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double sample_sd(const std::vector<double>& xs) {
  if (xs.size() < 2) throw Error(Errc::InvalidInput, "sd needs at least 2 values");
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

PosteriorSummary bayes_paired_t(const PairedSample& sample, double reference) {
  sample.check();
  const auto d = sample.differences();
  const double n = static_cast<double>(d.size());
  const double centre = mean(d);
  const double sd = sample_sd(d);
  bool identical = true;
  for (double x : d) identical = identical && x == d.front();
  if (identical || !(sd > 0.0)) {
    throw Error(Errc::ZeroVarianceDifferences, "all paired differences are identical");
  }

  const double scale = sd / std::sqrt(n);
  const double df = n - 1.0;
  const bm::students_t dist(df);

  PosteriorSummary out;
  out.point = centre;
  out.reference = reference;
  out.scale = scale;
  out.df = df;
  out.t_stat = (centre - reference) / scale;
  out.posterior_prob = bm::cdf(dist, *out.t_stat);
  const double q = bm::quantile(dist, 0.975);
  out.hdi_low = centre - q * scale;
  out.hdi_high = centre + q * scale;
  return out;
}

PosteriorSummary noninferiority(const PairedSample& sample, double margin_factor) {
  sample.check();
  if (!(margin_factor >= 0.0) || !std::isfinite(margin_factor)) {
    throw Error(Errc::InvalidInput, "margin factor must be finite and non-negative");
  }
  std::vector<double> pooled = sample.a;
  pooled.insert(pooled.end(), sample.b.begin(), sample.b.end());
  const double threshold = -margin_factor * sample_sd(pooled);
  return bayes_paired_t(sample, threshold);
}

PosteriorSummary bayes_binomial(long k, long n, double p0) {
  if (n < 1 || k < 0 || k > n) {
    throw Error(Errc::BadCounts, "need 0 <= k <= n and n >= 1 (k=" + std::to_string(k) + ", n=" +
                                     std::to_string(n) + ")");
  }
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw Error(Errc::BadCounts, "p0 must lie in [0,1]");
  const double alpha = static_cast<double>(k) + 1.0;
  const double beta = static_cast<double>(n - k) + 1.0;
  const bm::beta_distribution<double> post(alpha, beta);

  PosteriorSummary out;
  out.point = alpha / (alpha + beta);
  out.reference = p0;
  out.posterior_prob = bm::cdf(bm::complement(post, p0));
  out.hdi_low = bm::quantile(post, 0.025);
  out.hdi_high = bm::quantile(post, 0.975);
  return out;
}

PairedSample aggregate_coder_ratings(const std::vector<Rating>& ratings, const std::string& condition_a,
                                     const std::string& condition_b) {
  struct Acc {
    double sum = 0.0;
    int count = 0;
  };
  std::map<std::string, std::map<std::string, Acc>> by_item;  // item -> condition -> acc
  bool saw_a = false, saw_b = false;
  for (const auto& r : ratings) {
    if (!std::isfinite(r.score)) throw Error(Errc::InvalidInput, "non-finite rating");
    if (r.condition != condition_a && r.condition != condition_b) continue;
    saw_a = saw_a || r.condition == condition_a;
    saw_b = saw_b || r.condition == condition_b;
    auto& acc = by_item[r.item][r.condition];
    acc.sum += r.score;
    ++acc.count;
  }
  if (!saw_a || !saw_b) throw Error(Errc::InvalidInput, "both conditions must appear in the ratings");

  PairedSample out;
  for (const auto& [item, per_condition] : by_item) {
    auto ia = per_condition.find(condition_a);
    auto ib = per_condition.find(condition_b);
    if (ia == per_condition.end() || ib == per_condition.end()) continue;
    out.a.push_back(ia->second.sum / ia->second.count);
    out.b.push_back(ib->second.sum / ib->second.count);
  }
  return out;
}

}  // namespace vchild::stats
