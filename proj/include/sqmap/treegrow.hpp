#pragma once

// Edge-rooted binary plane trees: exact counts, a direct uniform sampler,
// a growth chain whose marginals are uniform, and an exhaustive enumerator
// used as an oracle for small sizes.
//
// Layout.  The root edge is u-v with dart 0 = u->v and dart 1 = v->u.  A
// tree with n internal vertices is read as a planted binary tree with n+1
// internal nodes: a virtual node whose left subtree hangs at u and whose
// right subtree hangs at v.  Every vertex x has an "up" dart (x -> parent
// side); an internal x has ccw rotation [up, left child, right child].
// Splitting a leaf appends four darts, so a tree built by the growth chain
// keeps every earlier tree as a dart prefix.

#include <set>
#include <string>
#include <vector>

#include "combmap.hpp"
#include "core.hpp"

namespace sqmap {

struct RootedBinaryTree {
  RootedMap rooted;
  int internal_count = 0;
  std::vector<int> leaves;  // vertex ids of degree-1 vertices
};

namespace detail {

inline RootedBinaryTree make_tree(std::vector<Dart> next, int internal_count) {
  const int D = static_cast<int>(next.size());
  std::vector<Dart> twin(D);
  for (Dart d = 0; d < D; ++d) twin[d] = d ^ 1;
  RootedBinaryTree t;
  t.rooted = RootedMap{CombinatorialMap(std::move(twin), std::move(next)), 0, 0};
  t.internal_count = internal_count;
  const auto& m = t.rooted.map;
  for (int v = 0; v < m.vertex_count(); ++v)
    if (m.degree(v) == 1) t.leaves.push_back(v);
  return t;
}

// Turns the leaf whose up dart is p into an internal vertex with two new
// leaves.  Returns the dart to the left child.
inline Dart split_leaf(std::vector<Dart>& next, Dart p) {
  const Dart a = static_cast<Dart>(next.size());
  next.resize(next.size() + 4);
  next[p] = a;
  next[a] = a + 2;
  next[a + 2] = p;
  next[a + 1] = a + 1;
  next[a + 3] = a + 3;
  return a;
}

}  // namespace detail

// Catalan numbers C_0..C_k, cached.
inline const mpz_class& catalan(int k) {
  static std::vector<mpz_class> table{mpz_class(1)};
  while (static_cast<int>(table.size()) <= k) {
    const long j = static_cast<long>(table.size()) - 1;  // C_{j+1} = C_j * 2(2j+1)/(j+2)
    mpz_class c = table.back() * (2 * (2 * j + 1));
    c /= (j + 2);
    table.push_back(c);
  }
  return table[k];
}

// |T_n|: edge-rooted binary trees with n internal vertices.
inline mpz_class tree_count(int n) { return catalan(n + 1); }

// Uniform over T_n.  The left subtree size of a node of size m is drawn with
// probability C_a C_{m-1-a} / C_m using exact integers.
inline RootedBinaryTree sample_direct(int n, Rng& rng) {
  if (n < 0) throw Error(Errc::InvalidArgument, "negative tree size");
  std::vector<Dart> next{0, 1};
  next.reserve(4 * n + 2);
  struct Job {
    Dart up;
    int size;
  };
  auto choose_left = [&rng](int m) {
    mpz_class x = uniform_below(rng, catalan(m));
    // Try sizes from both ends; most of the mass sits near the ends.
    for (int k = 0;; ++k) {
      int a = k, b = m - 1 - k;
      if (a > b) break;
      mpz_class w = catalan(a) * catalan(m - 1 - a);
      if (x < w) return a;
      x -= w;
      if (b != a) {
        if (x < w) return b;  // C_b C_{m-1-b} equals the same product
        x -= w;
      }
    }
    throw Error(Errc::InvalidArgument, "catalan decomposition exhausted");
  };
  const int total = n + 1;
  int a = choose_left(total);
  std::vector<Job> stack{{0, a}, {1, total - 1 - a}};
  while (!stack.empty()) {
    Job j = stack.back();
    stack.pop_back();
    if (j.size == 0) continue;
    Dart left = detail::split_leaf(next, j.up);
    int l = choose_left(j.size);
    stack.push_back({left + 2 + 1, j.size - 1 - l});
    stack.push_back({left + 1, l});
  }
  return detail::make_tree(std::move(next), n);
}

inline RootedBinaryTree sample_direct(int n, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return sample_direct(n, rng);
}

// Probability that a node of size m with left size a sends the next
// insertion to its left subtree, chosen so that uniform trees of size m
// become uniform trees of size m+1 while left sizes move by at most one.
// Computed in doubles from ratios of Catalan numbers, always summing the
// lighter tail to avoid cancellation.
inline double grow_left_probability(int m, int a) {
  if (m <= 0 || a < 0 || a > m - 1) throw Error(Errc::InvalidArgument, "grow_left_probability");
  // p_m(j) for j = 0..k, size-m left-size law.
  auto cdf = [](int mm, int k) {
    if (k < 0) return 0.0;
    if (k >= mm - 1) return 1.0;
    double p = static_cast<double>(mm + 1) / (2.0 * (2.0 * mm - 1.0));
    double s = p;
    for (int j = 0; j < k; ++j) {
      p *= (2.0 * j + 1.0) * (mm - j) / ((j + 2.0) * (2.0 * mm - 2.0 * j - 3.0));
      s += p;
    }
    return s;
  };
  auto pmf = [](int mm, int j) {
    int k = std::min(j, mm - 1 - j);
    double p = static_cast<double>(mm + 1) / (2.0 * (2.0 * mm - 1.0));
    for (int i = 0; i < k; ++i)
      p *= (2.0 * i + 1.0) * (mm - i) / ((i + 2.0) * (2.0 * mm - 2.0 * i - 3.0));
    return p;
  };
  if (m == 1) return 0.5;
  double num;
  if (a <= m - 1 - a) {
    num = cdf(m, a) - cdf(m + 1, a);
  } else {
    const int b = m - 1 - a;
    num = cdf(m + 1, b) - cdf(m, b - 1);
  }
  double q = num / pmf(m, a);
  return std::clamp(q, 0.0, 1.0);
}

class GrowthChain {
 public:
  explicit GrowthChain(std::uint64_t seed, std::uint64_t stream = 0)
      : rng_(make_rng(seed, stream)), next_{0, 1}, size_{0, 0} {}

  int internal_count() const { return n_; }

  // One leaf split.  The descent starts at the virtual root and at each
  // internal node picks a side with grow_left_probability.
  void step() {
    Dart p;
    {
      const int m = n_ + 1;
      const int a = size_[0];
      p = uniform01(rng_) < grow_left_probability(m, a) ? 0 : 1;
    }
    for (;;) {
      const int m = size_[p];
      ++size_[p];
      if (m == 0) {
        Dart left = detail::split_leaf(next_, p);
        size_.resize(next_.size(), 0);
        (void)left;
        break;
      }
      const Dart left_up = next_[p] ^ 1;
      const Dart right_up = next_[next_[p]] ^ 1;
      const int a = size_[left_up];
      p = uniform01(rng_) < grow_left_probability(m, a) ? left_up : right_up;
    }
    ++n_;
  }

  RootedBinaryTree tree() const { return detail::make_tree(next_, n_); }

 private:
  Rng rng_;
  std::vector<Dart> next_;
  std::vector<int> size_;  // internal vertices below each up dart
  int n_ = 0;
};

inline void grow_step(GrowthChain& chain) { chain.step(); }

// Trees at the requested sizes from a single chain.
inline std::vector<RootedBinaryTree> sample_chain(int n_max, const std::vector<int>& snapshot_ns,
                                                  std::uint64_t seed, std::uint64_t stream = 0) {
  for (int s : snapshot_ns)
    if (s < 0 || s > n_max)
      throw Error(Errc::SnapshotOutOfRange, "snapshot " + std::to_string(s) + " outside [0," +
                                                std::to_string(n_max) + "]");
  std::vector<RootedBinaryTree> out(snapshot_ns.size());
  if (snapshot_ns.empty()) return out;
  GrowthChain chain(seed, stream);
  for (int n = 0;; ++n) {
    for (std::size_t i = 0; i < snapshot_ns.size(); ++i)
      if (snapshot_ns[i] == n) out[i] = chain.tree();
    if (n == n_max) break;
    chain.step();
  }
  return out;
}

// For a tree built by the chain, the tree it was at size k: keep the first
// 4k+2 darts and skip over the removed ones in each rotation.
inline RootedBinaryTree restrict_to_prefix(const RootedBinaryTree& t, int k) {
  if (k < 0 || k > t.internal_count) throw Error(Errc::SnapshotOutOfRange, "prefix size");
  const int limit = 4 * k + 2;
  std::vector<Dart> next(limit);
  for (Dart d = 0; d < limit; ++d) {
    Dart x = t.rooted.map.next(d);
    while (x >= limit) x = t.rooted.map.next(x);
    next[d] = x;
  }
  return detail::make_tree(std::move(next), k);
}

// All of T_n up to isomorphism, n <= 8.  Built without the Catalan
// decomposition: start from one edge, split leaves in every possible way,
// deduplicate unrooted shapes at each size, then root at every dart.
inline std::vector<RootedBinaryTree> enumerate_trees(int n) {
  if (n < 0) throw Error(Errc::InvalidArgument, "negative tree size");
  if (n > 8) throw Error(Errc::TooLarge, "enumerate_trees is limited to n <= 8");
  std::vector<std::vector<Dart>> level{{0, 1}};
  for (int k = 0; k < n; ++k) {
    std::set<std::string> seen;
    std::vector<std::vector<Dart>> nxt;
    for (const auto& next : level) {
      const int D = static_cast<int>(next.size());
      for (Dart d = 0; d < D; ++d) {
        if (next[d] != d) continue;  // d must be the only dart at a leaf
        std::vector<Dart> grown = next;
        detail::split_leaf(grown, d);
        std::vector<Dart> twin(grown.size());
        for (std::size_t i = 0; i < grown.size(); ++i) twin[i] = static_cast<Dart>(i ^ 1);
        CombinatorialMap m(twin, grown);
        if (seen.insert(unrooted_code(m)).second) nxt.push_back(std::move(grown));
      }
    }
    level = std::move(nxt);
  }
  std::set<std::string> seen;
  std::vector<RootedBinaryTree> out;
  for (const auto& next : level) {
    RootedBinaryTree base = detail::make_tree(next, n);
    for (Dart r = 0; r < base.rooted.map.dart_count(); ++r) {
      if (!seen.insert(canonical_code(base.rooted.map, r)).second) continue;
      RootedBinaryTree t = base;
      t.rooted.root = r;
      t.rooted.outer_face_dart = r;
      out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace sqmap
