#pragma once

// Experiment suites over pipeline samples and growth chains.  Sample i of
// an experiment draws from make_rng(seed, i), so results do not depend on
// how the work is split.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "contacts.hpp"
#include "core.hpp"
#include "electric.hpp"
#include "hausdorff.hpp"
#include "io.hpp"
#include "pipeline.hpp"
#include "squaring.hpp"
#include "stats.hpp"

namespace sqmap {

struct ExperimentResult {
  std::string name;
  json params = json::object();
  json values = json::object();   // estimates with standard errors
  json samples = json::array();  // per-sample records

  json to_json() const { return {{"experiment", name}, {"params", params}, {"values", values}, {"samples", samples}}; }
};

inline void require_samples(long samples) {
  if (samples <= 0) throw Error(Errc::InvalidArgument, "sample count must be positive");
}

// Proportion with its binomial standard error.
inline json proportion(long hits, long total) {
  const double p = static_cast<double>(hits) / static_cast<double>(total);
  return {{"hits", hits}, {"total", total}, {"estimate", p},
          {"std_error", std::sqrt(p * (1 - p) / static_cast<double>(total))}};
}

inline constexpr double kThreeConnLimit = 256.0 / 729.0;

inline ExperimentResult experiment_threeconn(int n, long samples, std::uint64_t seed) {
  require_samples(samples);
  ExperimentResult r;
  r.name = "threeconn";
  r.params = {{"n", n}, {"samples", samples}, {"seed", seed}};
  long hits = 0;
  for (long i = 0; i < samples; ++i) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(i));
    RootedBinaryTree t = sample_direct(n, rng);
    const int h = static_cast<int>(uniform_below(rng, 6));
    const bool ok = is_irreducible(unroot_second(add_diagonal(closure(t), h)));
    hits += ok;
    r.samples.push_back(ok ? 1 : 0);
  }
  r.values = proportion(hits, samples);
  r.values["limit"] = kThreeConnLimit;
  r.values["deviation"] = r.values["estimate"].get<double>() - kThreeConnLimit;
  return r;
}

struct WidthOptions {
  bool require_3conn = true;
  SolveMode mode = SolveMode::Iterative;
};

// Width of the squared rectangle.  For 3-connected maps the law of the map
// and its dual agree, and lambda(G*) = 1/lambda(G), so log W should be
// symmetric about zero.  The two halves of the sample are compared as
// log W against -log W so that the KS samples are independent.
inline ExperimentResult experiment_width(int n, long samples, std::uint64_t seed, const WidthOptions& opt = {}) {
  require_samples(samples);
  ExperimentResult r;
  r.name = "width";
  r.params = {{"n", n}, {"samples", samples}, {"seed", seed}, {"require_3conn", opt.require_3conn},
              {"mode", mode_name(opt.mode)}};
  std::vector<double> lam, logs;
  PipelineOptions po;
  po.require_3conn = opt.require_3conn;
  for (long i = 0; i < samples; ++i) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(i));
    auto s = pipeline_sample(n, rng, po);
    Network net = Network::from_map(s.map);
    const double w = total_current(net, solve_potentials(net, opt.mode)).value();
    if (!(w > 0)) throw Error(Errc::InvalidTiling, "non-positive width");
    lam.push_back(w);
    logs.push_back(std::log(w));
    r.samples.push_back(w);
  }
  const std::size_t half = logs.size() / 2;
  std::vector<double> a(logs.begin(), logs.begin() + static_cast<long>(half));
  std::vector<double> b;
  for (std::size_t k = half; k < logs.size(); ++k) b.push_back(-logs[k]);
  auto ms = stats::mean_se(logs);
  r.values = {{"median_lambda", stats::median(lam)}, {"mean_log_lambda", ms.mean}, {"mean_log_lambda_se", ms.se},
              {"sign_test_p", stats::sign_test(logs)}};
  if (!a.empty() && !b.empty()) {
    auto ks = stats::ks_two_sample(a, b);
    r.values["ks_statistic"] = ks.statistic;
    r.values["ks_p"] = ks.p_value;
  }
  return r;
}

struct FourCornerOptions {
  int rational_limit = 500;  // exact arithmetic up to this n
};

inline ExperimentResult experiment_fourcorner(const std::vector<int>& schedule, long samples, std::uint64_t seed,
                                              const FourCornerOptions& opt = {}) {
  require_samples(samples);
  if (schedule.empty()) throw Error(Errc::InvalidArgument, "empty schedule");
  ExperimentResult r;
  r.name = "fourcorner";
  r.params = {{"schedule", schedule}, {"samples", samples}, {"seed", seed}, {"rational_limit", opt.rational_limit}};
  json per_n = json::array();
  std::vector<double> freq;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const int n = schedule[k];
    const SolveMode mode = n <= opt.rational_limit ? SolveMode::Rational : SolveMode::Iterative;
    long hits = 0;
    std::vector<int> counts;
    for (long i = 0; i < samples; ++i) {
      Rng rng = make_rng(derive_seed(seed, k), static_cast<std::uint64_t>(i));
      auto s = pipeline_sample(n, rng);
      int c = 0;
      if (mode == SolveMode::Rational)
        c = four_corner_count(square_map<Rational>(s.map));
      else
        c = four_corner_count(square_map<double>(s.map));
      counts.push_back(c);
      hits += c > 0;
    }
    json e = proportion(hits, samples);
    e["n"] = n;
    e["mode"] = mode_name(mode);
    per_n.push_back(e);
    r.samples.push_back({{"n", n}, {"counts", counts}});
    freq.push_back(e["estimate"].get<double>());
  }
  r.values = {{"per_n", per_n}, {"decreasing", freq.back() < freq.front()}};
  return r;
}

// Fraction of bootstrap resamples of the chains in which the rung medians
// are weakly decreasing.
inline double bootstrap_monotone_fraction(const std::vector<std::vector<double>>& d, int resamples, std::uint64_t seed) {
  if (d.empty()) return 0;
  const std::size_t C = d.size(), K = d[0].size();
  Rng rng = make_rng(seed, 0xb0075);
  int good = 0;
  std::vector<double> col(C);
  for (int b = 0; b < resamples; ++b) {
    std::vector<std::size_t> pick(C);
    for (auto& p : pick) p = static_cast<std::size_t>(uniform_below(rng, C));
    double prev = 0;
    bool ok = true;
    for (std::size_t k = 0; k < K && ok; ++k) {
      for (std::size_t c = 0; c < C; ++c) col[c] = d[pick[c]][k];
      const double m = stats::median(col);
      if (k > 0 && m > prev) ok = false;
      prev = m;
    }
    good += ok;
  }
  return static_cast<double>(good) / resamples;
}

// d_H(S_n, S_4n) along one coupled chain per chain index.
inline ExperimentResult experiment_hausdorff(const std::vector<int>& schedule, int chains, std::uint64_t seed,
                                             int resamples = 1000) {
  require_samples(chains);
  if (schedule.empty()) throw Error(Errc::InvalidArgument, "empty schedule");
  ExperimentResult r;
  r.name = "hausdorff";
  r.params = {{"schedule", schedule}, {"chains", chains}, {"seed", seed}, {"resamples", resamples}};
  std::vector<int> sizes;
  for (int n : schedule) {
    sizes.push_back(n);
    sizes.push_back(4 * n);
  }
  std::vector<std::vector<double>> d;
  for (int c = 0; c < chains; ++c) {
    auto seq = grow_sequence(sizes, derive_seed(seed, static_cast<std::uint64_t>(c)));
    std::vector<double> row;
    for (std::size_t k = 0; k < schedule.size(); ++k) {
      auto a = square_map<double>(seq[2 * k].map);
      auto b = square_map<double>(seq[2 * k + 1].map);
      row.push_back(hausdorff_distance(a, b));
    }
    r.samples.push_back(row);
    d.push_back(std::move(row));
  }
  json med = json::array();
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    std::vector<double> col;
    for (auto& row : d) col.push_back(row[k]);
    auto ms = stats::mean_se(col);
    med.push_back({{"n", schedule[k]}, {"median", stats::median(col)}, {"mean", ms.mean}, {"std_error", ms.se}});
  }
  r.values = {{"per_n", med}, {"bootstrap_monotone_fraction", bootstrap_monotone_fraction(d, resamples, seed)}};
  return r;
}

// First neighbour of s in ccw order after the root that is neither s nor t.
inline int root_neighbor(const RootedMap& m) {
  const int s = m.source(), t = m.sink();
  Dart d = m.map.next(m.root);
  while (d != m.root) {
    const int v = m.map.head_of(d);
    if (v != s && v != t) return v;
    d = m.map.next(d);
  }
  throw Error(Errc::VertexMissing, "s has no neighbour other than t");
}

// Potential of the root's neighbour along one chain per chain index; the
// successive differences |P_n - P_2n| should shrink.
inline ExperimentResult experiment_potential(const std::vector<int>& schedule, int chains, std::uint64_t seed) {
  require_samples(chains);
  if (schedule.size() < 3) throw Error(Errc::InvalidArgument, "schedule needs at least three sizes");
  ExperimentResult r;
  r.name = "potential";
  r.params = {{"schedule", schedule}, {"chains", chains}, {"seed", seed}};
  long decreasing = 0;
  for (int c = 0; c < chains; ++c) {
    auto seq = grow_sequence(schedule, derive_seed(seed, static_cast<std::uint64_t>(c)));
    std::vector<double> p;
    for (auto& s : seq) {
      Network net = Network::from_map(s.map);
      p.push_back(solve_potentials<double>(net).P[root_neighbor(s.map)]);
    }
    std::vector<double> diff;
    for (std::size_t k = 1; k < p.size(); ++k) diff.push_back(std::fabs(p[k] - p[k - 1]));
    const bool dec = diff.back() < diff.front();
    decreasing += dec;
    r.samples.push_back({{"potentials", p}, {"differences", diff}, {"decreasing", dec}});
  }
  r.values = proportion(decreasing, chains);
  return r;
}

// Root degree in 3-connected samples; the log-frequency is fitted linearly
// over degrees seen at least `min_count` times.
inline ExperimentResult experiment_degree_tail(int n, long samples, std::uint64_t seed, long min_count = 5) {
  require_samples(samples);
  ExperimentResult r;
  r.name = "degtail";
  r.params = {{"n", n}, {"samples", samples}, {"seed", seed}, {"min_count", min_count}};
  std::map<int, long> hist;
  PipelineOptions po;
  po.require_3conn = true;
  int min_deg = 1 << 30;
  for (long i = 0; i < samples; ++i) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(i));
    auto s = pipeline_sample(n, rng, po);
    const int d = s.map.map.degree(s.map.source());
    ++hist[d];
    min_deg = std::min(min_deg, d);
    r.samples.push_back(d);
  }
  std::vector<double> x, y;
  json h = json::object();
  for (auto [d, c] : hist) {
    h[std::to_string(d)] = c;
    if (c >= min_count) {
      x.push_back(d);
      y.push_back(std::log(static_cast<double>(c) / static_cast<double>(samples)));
    }
  }
  r.values = {{"histogram", h}, {"min_degree", min_deg}};
  if (x.size() >= 2) {
    auto [slope, intercept] = stats::linear_fit(x, y);
    r.values["slope"] = slope;
    r.values["intercept"] = intercept;
    r.values["fit_points"] = x.size();
  }
  return r;
}

// Centroid of the centres of the smallest tenth of the squares, as a
// marker for renderings.
template <class S>
std::pair<double, double> accumulation_probe(const Squaring<S>& sq, double fraction = 0.1) {
  std::vector<double> sides;
  for (auto& q : sq.squares)
    if (!q.degenerate) sides.push_back(to_double(q.side));
  if (sides.empty()) throw Error(Errc::InvalidTiling, "no squares");
  const double cut = stats::quantile(sides, fraction);
  double cx = 0, cy = 0;
  int k = 0;
  for (auto& q : sq.squares) {
    if (q.degenerate) continue;
    const double a = to_double(q.side);
    if (a > cut) continue;
    cx += to_double(q.x) + a / 2;
    cy += to_double(q.y) - a / 2;
    ++k;
  }
  return {cx / k, cy / k};
}

}  // namespace sqmap
