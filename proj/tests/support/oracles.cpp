#include "oracles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace vchild::oracle {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

double t_pdf(double x, double df) {
  const double log_c = std::lgamma((df + 1) / 2) - std::lgamma(df / 2) - 0.5 * std::log(df * M_PI);
  return std::exp(log_c - (df + 1) / 2 * std::log1p(x * x / df));
}

double t_cdf(double x, double df) {
  // Symmetric about 0: integrate the density from 0 to |x| in the x variable.
  const double ax = std::fabs(x);
  const int panels = std::max(400, static_cast<int>(ax * 400.0));
  const double half = simpson([df](double u) { return t_pdf(u, df); }, 0.0, ax, panels);
  return x >= 0.0 ? 0.5 + half : 0.5 - half;
}

double t_quantile(double p, double df) {
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 64; ++i) {
    const double mid = 0.5 * (lo + hi);
    (t_cdf(mid, df) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::pair<double, double> t_hdi(double centre, double scale, double df, double mass) {
  // Lower tail a in (0, 1-mass): the HDI has equal density at both ends.
  double lo = 1e-9, hi = 1.0 - mass - 1e-9;
  auto gap = [&](double a) { return t_pdf(t_quantile(a, df), df) - t_pdf(t_quantile(a + mass, df), df); };
  for (int i = 0; i < 50; ++i) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) < 0.0 ? lo : hi) = mid;
  }
  const double a = 0.5 * (lo + hi);
  return {centre + scale * t_quantile(a, df), centre + scale * t_quantile(a + mass, df)};
}

double beta_pdf(double x, double a, double b) {
  const double log_b = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  if (x <= 0.0) return a == 1.0 ? std::exp(-log_b) : 0.0;  // a < 1 is never integrated here
  if (x >= 1.0) return b == 1.0 ? std::exp(-log_b) : 0.0;
  return std::exp((a - 1) * std::log(x) + (b - 1) * std::log1p(-x) - log_b);
}

double beta_cdf(double x, double a, double b) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return simpson([&](double u) { return beta_pdf(u, a, b); }, 0.0, x, 20000);
}

double beta_quantile(double p, double a, double b) {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (beta_cdf(mid, a, b) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::pair<std::vector<double>, std::vector<double>> paired_with_t(double mean_diff, double t, int n,
                                                                  std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> d(n);
  for (auto& v : d) v = z(gen);
  const double m = std::accumulate(d.begin(), d.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : d) ss += (v - m) * (v - m);
  const double s = std::sqrt(ss / (n - 1));
  const double target_sd = mean_diff * std::sqrt(static_cast<double>(n)) / t;
  std::vector<double> a(n), b(n);
  std::uniform_real_distribution<double> base(-1.0, 1.0);
  for (int i = 0; i < n; ++i) {
    b[i] = base(gen);
    a[i] = b[i] + mean_diff + (d[i] - m) / s * target_sd;
  }
  return {a, b};
}

std::set<std::string> trigram_set(const std::string& text) {
  std::string clean;
  for (unsigned char c : text) {
    const char ch = std::isalnum(c) ? static_cast<char>(std::tolower(c)) : ' ';
    if (ch == ' ' && (clean.empty() || clean.back() == ' ')) continue;
    clean += ch;
  }
  while (!clean.empty() && clean.back() == ' ') clean.pop_back();
  clean = " " + clean + " ";
  std::set<std::string> out;
  for (std::size_t i = 0; i + 3 <= clean.size(); ++i) out.insert(clean.substr(i, 3));
  return out;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::size_t common = 0;
  for (const auto& g : a) common += b.count(g);
  const std::size_t uni = a.size() + b.size() - common;
  return uni ? static_cast<double>(common) / static_cast<double>(uni) : 1.0;
}

std::vector<std::pair<double, std::size_t>> brute_force_rank(const std::vector<std::vector<float>>& rows,
                                                             const std::vector<float>& query) {
  std::vector<std::pair<double, std::size_t>> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < query.size(); ++j) {
      const double d = static_cast<double>(rows[i][j]) - static_cast<double>(query[j]);
      s += d * d;
    }
    out.emplace_back(std::sqrt(s), i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double fleiss(const std::vector<std::vector<int>>& counts) {
  const double n_items = static_cast<double>(counts.size());
  const double m = std::accumulate(counts[0].begin(), counts[0].end(), 0.0);
  const std::size_t k = counts[0].size();
  double p_bar = 0.0;
  std::vector<double> pj(k, 0.0);
  for (const auto& row : counts) {
    double agree = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      agree += row[j] * (row[j] - 1.0);
      pj[j] += row[j];
    }
    p_bar += agree / (m * (m - 1.0));
  }
  p_bar /= n_items;
  double pe = 0.0;
  for (double v : pj) pe += (v / (n_items * m)) * (v / (n_items * m));
  return (p_bar - pe) / (1.0 - pe);
}

std::map<std::string, double> fold_effects(std::map<std::string, double> beliefs,
                                           const std::vector<std::vector<std::pair<std::string, double>>>& steps) {
  for (const auto& step : steps) {
    for (const auto& [id, delta] : step) {
      double v = beliefs.at(id) + delta;
      if (v < 0.0) v = 0.0;
      if (v > 1.0) v = 1.0;
      beliefs[id] = v;
    }
  }
  return beliefs;
}

std::size_t last_sentence_end(const std::string& text, std::size_t cap) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < text.size() && i < cap; ++i) {
    if (text[i] == '.' || text[i] == '!' || text[i] == '?') best = i + 1;
  }
  return best;
}

}  // namespace vchild::oracle
