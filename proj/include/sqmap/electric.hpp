#pragma once

// Unit-resistor networks on rooted maps.  The root edge st is cut, s is
// held at potential 1 and t at 0.  Potentials are computed either with a
// Jacobi-preconditioned conjugate gradient in doubles or by exact sparse
// elimination over GMP rationals.

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "combmap.hpp"
#include "core.hpp"

namespace sqmap {

enum class SolveMode { Iterative, Rational };

inline const char* mode_name(SolveMode m) { return m == SolveMode::Iterative ? "iterative" : "rational"; }

template <class S>
constexpr SolveMode mode_of() {
  return is_exact_v<S> ? SolveMode::Rational : SolveMode::Iterative;
}

struct SolverOptions {
  double tolerance = 1e-12;   // relative residual for the iterative solver
  int max_iter_per_vertex = 50;
  int exact_vertex_limit = 2000;
};

// Dirichlet problem on a multigraph: edges carry unit conductance, loops
// are ignored, `fixed[v]` is -1 for free vertices and otherwise an index
// into `values`.
struct Dirichlet {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> fixed;
  std::vector<int> values;  // boundary values, integers (0 or 1 here)
};

template <class S>
struct DirichletSolution {
  std::vector<S> value;
  double residual = 0;  // max |Lx - b| over free vertices, in doubles
  int iterations = 0;
};

namespace detail {

struct Csr {
  std::vector<int> start, nbr;
};

inline Csr adjacency(int V, const std::vector<std::pair<int, int>>& edges) {
  Csr c;
  c.start.assign(V + 1, 0);
  for (auto [u, v] : edges)
    if (u != v) {
      ++c.start[u + 1];
      ++c.start[v + 1];
    }
  for (int i = 0; i < V; ++i) c.start[i + 1] += c.start[i];
  c.nbr.resize(c.start[V]);
  std::vector<int> fill(c.start.begin(), c.start.end() - 1);
  for (auto [u, v] : edges)
    if (u != v) {
      c.nbr[fill[u]++] = v;
      c.nbr[fill[v]++] = u;
    }
  return c;
}

// Every free vertex must reach the boundary.
inline void check_well_posed(const Dirichlet& p, const Csr& adj) {
  std::vector<char> seen(p.vertex_count, 0);
  std::vector<int> stack;
  for (int v = 0; v < p.vertex_count; ++v)
    if (p.fixed[v] >= 0) {
      seen[v] = 1;
      stack.push_back(v);
    }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int k = adj.start[v]; k < adj.start[v + 1]; ++k) {
      int w = adj.nbr[k];
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  for (int v = 0; v < p.vertex_count; ++v)
    if (!seen[v]) throw Error(Errc::SingularSystem, "vertex " + std::to_string(v) + " is cut off from the boundary");
}

template <class S>
double dirichlet_residual(const Dirichlet& p, const Csr& adj, const std::vector<S>& x) {
  double worst = 0;
  for (int v = 0; v < p.vertex_count; ++v) {
    if (p.fixed[v] >= 0) continue;
    S r = S(adj.start[v + 1] - adj.start[v]) * x[v];
    for (int k = adj.start[v]; k < adj.start[v + 1]; ++k) r -= x[adj.nbr[k]];
    worst = std::max(worst, std::fabs(to_double(r)));
  }
  return worst;
}

inline DirichletSolution<double> solve_cg(const Dirichlet& p, const Csr& adj, const SolverOptions& opt) {
  const int V = p.vertex_count;
  std::vector<int> idx(V, -1), free_v;
  for (int v = 0; v < V; ++v)
    if (p.fixed[v] < 0) {
      idx[v] = static_cast<int>(free_v.size());
      free_v.push_back(v);
    }
  const int n = static_cast<int>(free_v.size());
  DirichletSolution<double> sol;
  sol.value.assign(V, 0.0);
  for (int v = 0; v < V; ++v)
    if (p.fixed[v] >= 0) sol.value[v] = p.values[p.fixed[v]];
  if (n == 0) return sol;

  std::vector<double> diag(n), b(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const int v = free_v[i];
    diag[i] = adj.start[v + 1] - adj.start[v];
    for (int k = adj.start[v]; k < adj.start[v + 1]; ++k) {
      const int w = adj.nbr[k];
      if (idx[w] < 0) b[i] += sol.value[w];
    }
  }
  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (int i = 0; i < n; ++i) {
      const int v = free_v[i];
      double s = diag[i] * x[i];
      for (int k = adj.start[v]; k < adj.start[v + 1]; ++k) {
        const int j = idx[adj.nbr[k]];
        if (j >= 0) s -= x[j];
      }
      y[i] = s;
    }
  };
  double bnorm = 0;
  for (double v : b) bnorm += v * v;
  bnorm = std::sqrt(bnorm);
  std::vector<double> x(n, 0.0), r = b, z(n), q(n), Ap(n);
  if (bnorm == 0) {
    for (int i = 0; i < n; ++i) sol.value[free_v[i]] = 0.0;
    return sol;
  }
  for (int i = 0; i < n; ++i) z[i] = r[i] / diag[i];
  q = z;
  double rz = 0;
  for (int i = 0; i < n; ++i) rz += r[i] * z[i];
  const int cap = opt.max_iter_per_vertex * std::max(V, 1);
  int it = 0;
  for (;; ++it) {
    double rn = 0;
    for (double v : r) rn += v * v;
    if (std::sqrt(rn) <= opt.tolerance * bnorm) break;
    if (it >= cap) throw Error(Errc::NoConvergence, "conjugate gradient hit the iteration cap");
    apply(q, Ap);
    double qAq = 0;
    for (int i = 0; i < n; ++i) qAq += q[i] * Ap[i];
    const double alpha = rz / qAq;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * q[i];
      r[i] -= alpha * Ap[i];
    }
    for (int i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    double rz_new = 0;
    for (int i = 0; i < n; ++i) rz_new += r[i] * z[i];
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) q[i] = z[i] + beta * q[i];
  }
  for (int i = 0; i < n; ++i) sol.value[free_v[i]] = x[i];
  sol.iterations = it;
  return sol;
}

// Gaussian elimination on the symmetric positive definite reduced
// Laplacian, pivoting on the free vertex of least current degree.
inline DirichletSolution<Rational> solve_exact(const Dirichlet& p, const Csr& adj, const SolverOptions& opt) {
  const int V = p.vertex_count;
  if (V > opt.exact_vertex_limit)
    throw Error(Errc::TooLarge, "exact solve limited to " + std::to_string(opt.exact_vertex_limit) + " vertices");
  DirichletSolution<Rational> sol;
  sol.value.assign(V, Rational(0));
  for (int v = 0; v < V; ++v)
    if (p.fixed[v] >= 0) sol.value[v] = p.values[p.fixed[v]];

  std::vector<std::map<int, Rational>> row(V);
  std::vector<Rational> rhs(V);
  std::vector<char> is_free(V, 0);
  for (int v = 0; v < V; ++v) {
    if (p.fixed[v] >= 0) continue;
    is_free[v] = 1;
    row[v][v] = adj.start[v + 1] - adj.start[v];
    for (int k = adj.start[v]; k < adj.start[v + 1]; ++k) {
      const int w = adj.nbr[k];
      if (p.fixed[w] >= 0)
        rhs[v] += sol.value[w];
      else
        row[v][w] -= 1;
    }
  }
  std::set<std::pair<std::size_t, int>> queue;
  for (int v = 0; v < V; ++v)
    if (is_free[v]) queue.insert({row[v].size(), v});
  std::vector<int> order;
  std::vector<char> done(V, 0);
  while (!queue.empty()) {
    const int piv = queue.begin()->second;
    queue.erase(queue.begin());
    done[piv] = 1;
    order.push_back(piv);
    const Rational app = row[piv].at(piv);
    if (sgn(app) == 0) throw Error(Errc::SingularSystem, "zero pivot");
    for (auto& [i, aip] : row[piv]) {
      if (i == piv || done[i]) continue;
      queue.erase({row[i].size(), i});
      // row_i -= (a_i,piv / a_piv,piv) row_piv ; symmetric so a_i,piv = a_piv,i
      const Rational f = row[i].at(piv) / app;
      for (auto& [j, apj] : row[piv]) {
        if (j == piv || done[j]) continue;
        Rational& a = row[i][j];
        a -= f * apj;
        if (sgn(a) == 0 && j != i) row[i].erase(j);
      }
      rhs[i] -= f * rhs[piv];
      row[i].erase(piv);
      queue.insert({row[i].size(), i});
      (void)aip;
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    Rational s = rhs[v];
    Rational diag;
    for (auto& [j, a] : row[v]) {
      if (j == v)
        diag = a;
      else
        s -= a * sol.value[j];
    }
    sol.value[v] = s / diag;
  }
  sol.residual = dirichlet_residual(p, adj, sol.value);
  return sol;
}

}  // namespace detail

template <class S>
DirichletSolution<S> solve_dirichlet(const Dirichlet& p, const SolverOptions& opt = {}) {
  if (static_cast<int>(p.fixed.size()) != p.vertex_count) throw Error(Errc::InvalidArgument, "fixed size");
  detail::Csr adj = detail::adjacency(p.vertex_count, p.edges);
  detail::check_well_posed(p, adj);
  if constexpr (is_exact_v<S>) {
    return detail::solve_exact(p, adj, opt);
  } else {
    auto sol = detail::solve_cg(p, adj, opt);
    sol.residual = detail::dirichlet_residual(p, adj, sol.value);
    return sol;
  }
}

// The electrical view of a rooted map.  Conducting edges are all edges
// except the root edge and loops.
struct Network {
  RootedMap rooted;
  int s = 0, t = 0;
  int root_edge = 0;
  bool squarable = false;  // the strict check_squarable predicate

  static Network from_map(const RootedMap& m) {
    Network n;
    n.rooted = m;
    n.s = m.source();
    n.t = m.sink();
    n.root_edge = m.map.edge_of(m.root);
    n.squarable = check_squarable(m);
    if (n.s == n.t) throw Error(Errc::NotSquarable, "root edge is a loop");
    // s and t must stay connected once the root edge is cut
    const auto& g = m.map;
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<int> stack{n.s};
    seen[n.s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (Dart d : g.darts_around_vertex(v)) {
        if (g.edge_of(d) == n.root_edge) continue;
        int w = g.head_of(d);
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    if (!seen[n.t]) throw Error(Errc::NotSquarable, "no current flows once the root edge is cut");
    return n;
  }

  int vertex_count() const { return rooted.map.vertex_count(); }

  Dirichlet problem() const {
    Dirichlet p;
    const auto& g = rooted.map;
    p.vertex_count = g.vertex_count();
    for (int e = 0; e < g.edge_count(); ++e) {
      if (e == root_edge) continue;
      Dart d = g.edge_dart(e);
      p.edges.emplace_back(g.vertex_of(d), g.head_of(d));
    }
    p.fixed.assign(p.vertex_count, -1);
    p.fixed[s] = 0;
    p.fixed[t] = 1;
    p.values = {1, 0};
    return p;
  }
};

template <class S>
struct Potentials {
  std::vector<S> P;
  SolveMode mode = mode_of<S>();
  double residual = 0;
  int iterations = 0;
};

template <class S>
Potentials<S> solve_potentials(const Network& net, const SolverOptions& opt = {}) {
  auto sol = solve_dirichlet<S>(net.problem(), opt);
  Potentials<S> out;
  out.P = std::move(sol.value);
  out.residual = sol.residual;
  out.iterations = sol.iterations;
  return out;
}

inline Potentials<double> solve_potentials(const Network& net, SolveMode mode, const SolverOptions& opt = {}) {
  if (mode == SolveMode::Iterative) return solve_potentials<double>(net, opt);
  auto exact = solve_potentials<Rational>(net, opt);
  Potentials<double> out;
  out.mode = SolveMode::Rational;
  out.residual = exact.residual;
  for (auto& x : exact.P) out.P.push_back(x.get_d());
  return out;
}

// Total current.  source_sum is sum over neighbours v of s (root edge
// excluded) of 1 - P(v); degree_form is deg(s) - 1 - sum of P(v) over the
// same darts; sink_sum is the current arriving at t.
template <class S>
struct TotalCurrent {
  S source_sum{}, degree_form{}, sink_sum{};
  S value() const { return source_sum; }
};

template <class S>
TotalCurrent<S> total_current(const Network& net, const Potentials<S>& pot) {
  const auto& g = net.rooted.map;
  TotalCurrent<S> r;
  S psum = 0;
  int deg = 0;
  for (Dart d : g.darts_around_vertex(net.s)) {
    ++deg;
    if (d == net.rooted.root) continue;
    const S& pv = pot.P[g.head_of(d)];
    r.source_sum += S(1) - pv;
    psum += pv;
  }
  r.degree_form = S(deg - 1) - psum;
  for (Dart d : g.darts_around_vertex(net.t)) {
    if (g.edge_of(d) == net.root_edge) continue;
    r.sink_sum += pot.P[g.head_of(d)];
  }
  return r;
}

// Signed current on every edge, oriented along edge_dart(e); the root edge
// gets 0.  node_residual is the largest Kirchhoff imbalance off {s,t}.
template <class S>
struct Flow {
  std::vector<S> current;
  S lambda{};
  double node_residual = 0;
};

template <class S>
Flow<S> edge_currents(const Network& net, const Potentials<S>& pot) {
  const auto& g = net.rooted.map;
  Flow<S> f;
  f.current.assign(g.edge_count(), S(0));
  for (int e = 0; e < g.edge_count(); ++e) {
    if (e == net.root_edge) continue;
    Dart d = g.edge_dart(e);
    f.current[e] = pot.P[g.vertex_of(d)] - pot.P[g.head_of(d)];
  }
  f.lambda = total_current(net, pot).value();
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (v == net.s || v == net.t) continue;
    S bal = 0;
    for (Dart d : g.darts_around_vertex(v)) {
      const int e = g.edge_of(d);
      bal += (d == g.edge_dart(e)) ? f.current[e] : S(-f.current[e]);
    }
    f.node_residual = std::max(f.node_residual, std::fabs(to_double(bal)));
  }
  return f;
}

// Potentials on the faces.  x_hat solves the dual problem with 1 at the
// face on the right of st and 0 at the face on its left; x = lambda x_hat.
template <class S>
struct DualPotentials {
  RootedMap dual;
  std::vector<S> x_hat, x;  // indexed by face id of the primal map
  double residual = 0;
};

template <class S>
DualPotentials<S> dual_potentials(const Network& net, const S& lambda, const SolverOptions& opt = {}) {
  DualPotentials<S> out;
  out.dual = dual(net.rooted);
  Network dn = Network::from_map(out.dual);
  auto sol = solve_potentials<S>(dn, opt);
  // dual vertex of dart d is the primal face on the right of d
  const auto& g = net.rooted.map;
  out.x_hat.assign(g.face_count(), S(0));
  for (int f = 0; f < g.face_count(); ++f) out.x_hat[f] = sol.P[out.dual.map.vertex_of(g.face_dart(f))];
  out.x.resize(out.x_hat.size());
  for (std::size_t i = 0; i < out.x_hat.size(); ++i) out.x[i] = lambda * out.x_hat[i];
  out.residual = sol.residual;
  return out;
}

// Random walk started at v, stopped at s or t, with the root edge removed.
struct HittingEstimate {
  double estimate = 0;
  double std_error = 0;
  long walks = 0;
};

inline HittingEstimate mc_hitting_oracle(const Network& net, int v, long walks, std::uint64_t seed,
                                         long max_steps = 100000000L) {
  const auto& g = net.rooted.map;
  if (v < 0 || v >= g.vertex_count()) throw Error(Errc::VertexMissing, "vertex " + std::to_string(v));
  HittingEstimate h;
  h.walks = walks;
  if (v == net.s || v == net.t) {
    h.estimate = v == net.s ? 1.0 : 0.0;
    return h;
  }
  auto p = net.problem();
  detail::Csr adj = detail::adjacency(p.vertex_count, p.edges);
  Rng rng = make_rng(seed);
  long hits = 0;
  for (long w = 0; w < walks; ++w) {
    int x = v;
    long steps = 0;
    while (x != net.s && x != net.t) {
      const int deg = adj.start[x + 1] - adj.start[x];
      if (deg == 0) throw Error(Errc::SingularSystem, "walk stuck");
      x = adj.nbr[adj.start[x] + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(deg)))];
      if (++steps > max_steps) throw Error(Errc::NoConvergence, "walk exceeded the step cap");
    }
    hits += x == net.s;
  }
  h.estimate = static_cast<double>(hits) / static_cast<double>(walks);
  h.std_error = std::sqrt(h.estimate * (1 - h.estimate) / static_cast<double>(walks));
  return h;
}

// Names a vertex either by id or by a walk from the root dart: 'n' next,
// 'p' prev, 't' twin; the vertex is the tail of the final dart.
struct VertexLocator {
  int id = -1;
  std::string path;

  int resolve(const RootedMap& m) const {
    if (id >= 0) {
      if (id >= m.map.vertex_count()) throw Error(Errc::VertexMissing, "vertex " + std::to_string(id));
      return id;
    }
    Dart d = m.root;
    for (char c : path) {
      if (c == 'n')
        d = m.map.next(d);
      else if (c == 'p')
        d = m.map.prev(d);
      else if (c == 't')
        d = m.map.twin(d);
      else
        throw Error(Errc::VertexMissing, "bad locator step");
    }
    return m.map.vertex_of(d);
  }
};

// Potential of the located vertex in every map of the sequence.
inline std::vector<double> potential_convergence_probe(const std::vector<RootedMap>& maps,
                                                       const VertexLocator& where,
                                                       SolveMode mode = SolveMode::Iterative) {
  std::vector<double> out;
  for (const auto& m : maps) {
    Network net = Network::from_map(m);
    const int v = where.resolve(m);
    out.push_back(solve_potentials(net, mode).P[v]);
  }
  return out;
}

}  // namespace sqmap
