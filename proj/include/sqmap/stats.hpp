#pragma once

// Small statistics helpers for the experiments and uniformity tests.

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include "core.hpp"

namespace sqmap::stats {

struct ChiSquare {
  double statistic = 0;
  int dof = 0;
  double p_value = 1;
};

// Pearson test of observed counts against equal expected frequencies.
inline ChiSquare chi_square_uniform(const std::vector<long>& counts) {
  if (counts.size() < 2) throw Error(Errc::InvalidArgument, "chi-square needs two cells");
  double total = 0;
  for (long c : counts) total += static_cast<double>(c);
  const double expect = total / static_cast<double>(counts.size());
  ChiSquare r;
  for (long c : counts) r.statistic += (c - expect) * (c - expect) / expect;
  r.dof = static_cast<int>(counts.size()) - 1;
  boost::math::chi_squared dist(r.dof);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

struct MeanSe {
  double mean = 0;
  double se = 0;
  long n = 0;
};

inline MeanSe mean_se(const std::vector<double>& x) {
  MeanSe r;
  r.n = static_cast<long>(x.size());
  if (x.empty()) return r;
  for (double v : x) r.mean += v;
  r.mean /= static_cast<double>(x.size());
  if (x.size() > 1) {
    double ss = 0;
    for (double v : x) ss += (v - r.mean) * (v - r.mean);
    r.se = std::sqrt(ss / static_cast<double>(x.size() - 1) / static_cast<double>(x.size()));
  }
  return r;
}

inline double median(std::vector<double> x) {
  if (x.empty()) return std::nan("");
  std::sort(x.begin(), x.end());
  const std::size_t k = x.size() / 2;
  return x.size() % 2 ? x[k] : 0.5 * (x[k - 1] + x[k]);
}

// Linear interpolation quantile, q in [0,1].
inline double quantile(std::vector<double> x, double q) {
  if (x.empty()) return std::nan("");
  std::sort(x.begin(), x.end());
  const double pos = q * static_cast<double>(x.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, x.size() - 1);
  return x[lo] + (pos - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

// Asymptotic Kolmogorov distribution: P(K > t).
inline double kolmogorov_survival(double t) {
  if (t <= 0) return 1.0;
  if (t < 0.2) return 1.0;
  double s = 0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    s += (k % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

struct KsResult {
  double statistic = 0;
  double p_value = 1;
};

// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value and the
// usual small-sample correction of the scaling.
inline KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw Error(Errc::InvalidArgument, "empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double ne = na * nb / (na + nb);
  const double sq = std::sqrt(ne);
  KsResult r;
  r.statistic = d;
  r.p_value = kolmogorov_survival((sq + 0.12 + 0.11 / sq) * d);
  return r;
}

// Two-sided sign test of "positive and negative values equally likely";
// zeros are dropped.
inline double sign_test(const std::vector<double>& x) {
  long pos = 0, neg = 0;
  for (double v : x) {
    if (v > 0) ++pos;
    if (v < 0) ++neg;
  }
  const long n = pos + neg;
  if (n == 0) return 1.0;
  boost::math::binomial dist(static_cast<double>(n), 0.5);
  const long k = std::min(pos, neg);
  return std::min(1.0, 2.0 * boost::math::cdf(dist, static_cast<double>(k)));
}

// Least-squares slope and intercept.
inline std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw Error(Errc::InvalidArgument, "linear_fit needs two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace sqmap::stats
