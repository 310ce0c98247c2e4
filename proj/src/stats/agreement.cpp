#include "vchild/stats/agreement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "vchild/error.hpp"

namespace vchild::stats {

double cohen_kappa(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.size() != b.size()) throw Error(Errc::InvalidInput, "label vectors differ in length");
  if (a.size() < 2) throw Error(Errc::InvalidInput, "need at least 2 items");
  const double n = static_cast<double>(a.size());

  std::map<std::string_view, double> ma, mb;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma[a[i]] += 1.0;
    mb[b[i]] += 1.0;
    if (a[i] == b[i]) ++agree;
  }
  const double po = static_cast<double>(agree) / n;
  double pe = 0.0;
  for (const auto& [label, count] : ma) {
    auto it = mb.find(label);
    if (it != mb.end()) pe += (count / n) * (it->second / n);
  }
  if (pe >= 1.0) {
    if (po >= 1.0) return 1.0;
    throw Error(Errc::DegenerateMarginals, "chance agreement is 1");
  }
  return (po - pe) / (1.0 - pe);
}

double fleiss_kappa(const CountMatrix& counts, int raters) {
  if (raters < 2) throw Error(Errc::InvalidInput, "Fleiss kappa needs at least 2 raters");
  if (counts.size() < 2) throw Error(Errc::InvalidInput, "Fleiss kappa needs at least 2 items");
  const std::size_t categories = counts.front().size();
  const double m = raters;
  const double items = static_cast<double>(counts.size());

  std::vector<double> column(categories, 0.0);
  double p_bar = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const auto& row = counts[i];
    if (row.size() != categories) throw Error(Errc::InvalidInput, "ragged count matrix");
    long sum = 0;
    double sq = 0.0;
    for (std::size_t j = 0; j < categories; ++j) {
      if (row[j] < 0) throw Error(Errc::InvalidInput, "negative count");
      sum += row[j];
      sq += static_cast<double>(row[j]) * row[j];
      column[j] += row[j];
    }
    if (sum != raters) {
      throw Error(Errc::RowSumMismatch, "row " + std::to_string(i) + " sums to " + std::to_string(sum) +
                                            ", expected " + std::to_string(raters));
    }
    p_bar += (sq - m) / (m * (m - 1.0));
  }
  p_bar /= items;

  double pe = 0.0;
  for (double c : column) {
    const double p = c / (items * m);
    pe += p * p;
  }
  if (pe >= 1.0) {
    if (p_bar >= 1.0) return 1.0;
    throw Error(Errc::DegenerateMarginals, "chance agreement is 1");
  }
  return (p_bar - pe) / (1.0 - pe);
}

CountMatrix tally_labels(const std::vector<std::vector<std::string>>& labels,
                         std::vector<std::string>* categories) {
  std::set<std::string> seen;
  for (const auto& row : labels) seen.insert(row.begin(), row.end());
  std::vector<std::string> cats(seen.begin(), seen.end());
  CountMatrix counts;
  counts.reserve(labels.size());
  for (const auto& row : labels) {
    std::vector<int> tally(cats.size(), 0);
    for (const auto& label : row) {
      auto it = std::lower_bound(cats.begin(), cats.end(), label);
      ++tally[static_cast<std::size_t>(it - cats.begin())];
    }
    counts.push_back(std::move(tally));
  }
  if (categories) *categories = std::move(cats);
  return counts;
}

double icc(const std::vector<std::vector<double>>& ratings) {
  const std::size_t n = ratings.size();
  if (n < 2) throw Error(Errc::InvalidInput, "ICC needs at least 2 items");
  const std::size_t k = ratings.front().size();
  if (k < 2) throw Error(Errc::InvalidInput, "ICC needs at least 2 raters");
  for (const auto& row : ratings) {
    if (row.size() != k) throw Error(Errc::InvalidInput, "ICC needs a complete matrix");
    for (double x : row) {
      if (!std::isfinite(x)) throw Error(Errc::InvalidInput, "ICC ratings must be finite");
    }
  }

  bool raters_agree = true;  // every row constant
  bool all_equal = true;
  for (const auto& row : ratings) {
    for (double x : row) {
      raters_agree = raters_agree && x == row.front();
      all_equal = all_equal && x == ratings.front().front();
    }
  }
  if (all_equal) return 1.0;
  // Column and residual mean squares are exactly zero here; skip the
  // rounding the general formula would introduce.
  if (raters_agree) return 1.0;

  std::vector<double> row_mean(n, 0.0), col_mean(k, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      row_mean[i] += ratings[i][j];
      col_mean[j] += ratings[i][j];
    }
  }
  for (double& r : row_mean) {
    grand += r;
    r /= static_cast<double>(k);
  }
  for (double& c : col_mean) c /= static_cast<double>(n);
  grand /= static_cast<double>(n * k);

  double ss_rows = 0.0, ss_cols = 0.0, ss_err = 0.0;
  for (std::size_t i = 0; i < n; ++i) ss_rows += (row_mean[i] - grand) * (row_mean[i] - grand);
  ss_rows *= static_cast<double>(k);
  for (std::size_t j = 0; j < k; ++j) ss_cols += (col_mean[j] - grand) * (col_mean[j] - grand);
  ss_cols *= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double e = ratings[i][j] - row_mean[i] - col_mean[j] + grand;
      ss_err += e * e;
    }
  }

  const double dn = static_cast<double>(n), dk = static_cast<double>(k);
  const double ms_rows = ss_rows / (dn - 1.0);
  const double ms_cols = ss_cols / (dk - 1.0);
  const double ms_err = ss_err / ((dn - 1.0) * (dk - 1.0));
  const double denom = ms_rows + (dk - 1.0) * ms_err + dk * (ms_cols - ms_err) / dn;
  if (denom == 0.0) throw Error(Errc::ZeroVariance, "ICC undefined: zero denominator");
  return (ms_rows - ms_err) / denom;
}

}  // namespace vchild::stats
