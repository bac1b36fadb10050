#pragma once

// Tree -> hexagon quadrangulation -> diagonal -> Tutte preimage.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "closure.hpp"
#include "core.hpp"
#include "treegrow.hpp"
#include "tutte.hpp"

namespace sqmap {

struct PipelineSample {
  RootedBinaryTree tree;
  int hex_index = 0;
  RootedMap quad;  // Q_n, rooted at the tree root
  RootedMap map;   // G_n with n + 4 edges
  bool three_connected = false;
  long attempts = 1;  // trees drawn, > 1 only under rejection
};

inline PipelineSample pipeline_from_tree(const RootedBinaryTree& t, int hex_index) {
  PipelineSample s;
  s.tree = t;
  s.hex_index = hex_index;
  s.quad = unroot_second(add_diagonal(closure(t), hex_index));
  s.map = tutte_inverse(s.quad);
  s.three_connected = is_irreducible(s.quad);
  return s;
}

struct PipelineOptions {
  std::optional<int> hex_index;  // uniform in 0..5 when unset
  bool require_3conn = false;
  long max_attempts = 100000;
};

inline PipelineSample pipeline_sample(int n, Rng& rng, const PipelineOptions& opt = {}) {
  if (n < 1) throw Error(Errc::InvalidArgument, "n must be at least 1");
  if (opt.hex_index && (*opt.hex_index < 0 || *opt.hex_index > 5))
    throw Error(Errc::InvalidArgument, "hexagon index must be in 0..5");
  for (long a = 1; a <= opt.max_attempts; ++a) {
    RootedBinaryTree t = sample_direct(n, rng);
    const int i = opt.hex_index ? *opt.hex_index : static_cast<int>(uniform_below(rng, 6));
    // cheap test first; the map is only built for accepted samples
    if (opt.require_3conn) {
      RootedMap q = unroot_second(add_diagonal(closure(t), i));
      if (!is_irreducible(q)) continue;
    }
    PipelineSample s = pipeline_from_tree(t, i);
    s.attempts = a;
    return s;
  }
  throw Error(Errc::RejectionLimit, "no 3-connected sample in " + std::to_string(opt.max_attempts) + " attempts");
}

inline PipelineSample pipeline_sample(int n, std::uint64_t seed, const PipelineOptions& opt = {}) {
  Rng rng = make_rng(seed);
  return pipeline_sample(n, rng, opt);
}

// One coupled growth chain; the hexagon index is drawn once per chain.
inline std::vector<PipelineSample> grow_sequence(const std::vector<int>& schedule, std::uint64_t seed,
                                                 std::optional<int> hex_index = std::nullopt) {
  if (schedule.empty()) throw Error(Errc::InvalidArgument, "empty schedule");
  int n_max = 0;
  for (int n : schedule) {
    if (n < 1) throw Error(Errc::InvalidArgument, "schedule entries must be positive");
    n_max = std::max(n_max, n);
  }
  Rng pick = make_rng(seed, 1);
  const int i = hex_index ? *hex_index : static_cast<int>(uniform_below(pick, 6));
  std::vector<PipelineSample> out;
  for (auto& t : sample_chain(n_max, schedule, seed, 0)) out.push_back(pipeline_from_tree(t, i));
  return out;
}

}  // namespace sqmap
