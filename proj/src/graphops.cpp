#include "lincon/graphops.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <set>

#include "lincon/solver.hpp"

namespace lincon {

PartialMatrix PartialMatrix::restrict(const SymMatrix& s, const Graph& g) {
  if (s.order() != g.order()) throw Error(ErrorKind::OrderMismatch, "matrix and graph orders differ");
  PartialMatrix p;
  p.m = g.order();
  for (std::size_t i = 0; i < p.m; ++i) p.diagonal.push_back(s(i, i));
  for (const auto& [i, j] : g.edges()) p.known[{i, j}] = s(i, j);
  return p;
}

double PartialMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= m || j >= m) throw Error(ErrorKind::OutOfRange, "partial matrix index");
  if (i == j) return diagonal[i];
  auto it = known.find(make_edge(i, j));
  if (it == known.end())
    throw Error(ErrorKind::InputError, "entry (" + std::to_string(i) + ", " + std::to_string(j) + ") is unknown");
  return it->second;
}

SymMatrix PartialMatrix::principal(const std::vector<std::size_t>& idx) const {
  SymMatrix out(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a; b < idx.size(); ++b) out.set(a, b, at(idx[a], idx[b]));
  return out;
}

SuffStats graph_statistics(const Graph& g, const PartialMatrix& t) {
  if (t.m != g.order() || t.diagonal.size() != g.order())
    throw Error(ErrorKind::OrderMismatch, "partial matrix order");
  SuffStats out(t.diagonal);
  for (const Edge& e : g.edges()) {
    const auto it = t.known.find(e);
    if (it == t.known.end()) throw Error(ErrorKind::InputError, "missing edge value");
    out.values().push_back(2.0 * it->second);
  }
  return out;
}

ChordalityReport is_chordal(const Graph& g) {
  const std::size_t m = g.order();
  // Maximum cardinality search; the reverse of the visit order is a perfect
  // elimination ordering exactly when g is chordal.
  std::vector<int> weight(m, 0);
  std::vector<bool> visited(m, false);
  std::vector<std::size_t> visit;
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t best = m;
    for (std::size_t v = 0; v < m; ++v)
      if (!visited[v] && (best == m || weight[v] > weight[best])) best = v;
    visited[best] = true;
    visit.push_back(best);
    for (std::size_t u : g.neighbors(best))
      if (!visited[u]) ++weight[u];
  }
  ChordalityReport rep;
  rep.ordering.assign(visit.rbegin(), visit.rend());
  std::vector<std::size_t> pos(m);
  for (std::size_t k = 0; k < m; ++k) pos[rep.ordering[k]] = k;
  for (std::size_t v : rep.ordering) {
    std::vector<std::size_t> later;
    for (std::size_t u : g.neighbors(v))
      if (pos[u] > pos[v]) later.push_back(u);
    if (later.empty()) continue;
    const std::size_t first = *std::min_element(later.begin(), later.end(),
                                                [&](std::size_t a, std::size_t b) { return pos[a] < pos[b]; });
    for (std::size_t u : later)
      if (u != first && !g.has_edge(first, u)) return rep;
  }
  rep.chordal = true;
  return rep;
}

namespace {

void bron_kerbosch(const Graph& g, std::set<std::size_t> r, std::set<std::size_t> p, std::set<std::size_t> x,
                   std::vector<std::vector<std::size_t>>& out) {
  if (p.empty() && x.empty()) {
    out.emplace_back(r.begin(), r.end());
    return;
  }
  std::size_t pivot = 0;
  std::size_t best = 0;
  bool have = false;
  for (const auto* s : {&p, &x})
    for (std::size_t u : *s) {
      std::size_t c = 0;
      for (std::size_t v : p) c += g.has_edge(u, v);
      if (!have || c > best) {
        pivot = u;
        best = c;
        have = true;
      }
    }
  std::vector<std::size_t> candidates;
  for (std::size_t v : p)
    if (!g.has_edge(pivot, v)) candidates.push_back(v);
  for (std::size_t v : candidates) {
    std::set<std::size_t> r2 = r, p2, x2;
    r2.insert(v);
    for (std::size_t u : g.neighbors(v)) {
      if (p.count(u)) p2.insert(u);
      if (x.count(u)) x2.insert(u);
    }
    bron_kerbosch(g, r2, p2, x2, out);
    p.erase(v);
    x.insert(v);
  }
}

void require_chordal(const Graph& g) {
  if (!is_chordal(g).chordal) throw Error(ErrorKind::NotChordal, "graph is not chordal");
}

std::vector<std::size_t> intersect(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Adds the inverse of s restricted to idx into k.
void add_padded_inverse(SymMatrix& k, const SymMatrix& s, const std::vector<std::size_t>& idx, double sign) {
  if (idx.empty()) return;
  const SymMatrix inv = inverse(s.principal(idx));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a; b < idx.size(); ++b) k.add(idx[a], idx[b], sign * inv(a, b));
}

}  // namespace

std::vector<std::vector<std::size_t>> maximal_cliques(const Graph& g) {
  std::vector<std::vector<std::size_t>> out;
  if (g.order() == 0) return out;
  std::set<std::size_t> all;
  for (std::size_t v = 0; v < g.order(); ++v) all.insert(v);
  bron_kerbosch(g, {}, all, {}, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::size_t>> CliqueTree::separators() const {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& [a, b] : edges) out.push_back(intersect(cliques[a], cliques[b]));
  return out;
}

CliqueTree clique_tree(const Graph& g, TieBreak tie) {
  require_chordal(g);
  CliqueTree tree;
  tree.cliques = maximal_cliques(g);
  const std::size_t n = tree.cliques.size();
  // Prim's algorithm on the complete intersection graph; disconnected graphs
  // get empty separators, which contribute nothing.
  std::vector<bool> in(n, false);
  if (n == 0) return tree;
  in[0] = true;
  for (std::size_t added = 1; added < n; ++added) {
    long best = -1;
    std::pair<std::size_t, std::size_t> pick{0, 0};
    for (std::size_t a = 0; a < n; ++a) {
      if (!in[a]) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (in[b]) continue;
        const long w = static_cast<long>(intersect(tree.cliques[a], tree.cliques[b]).size());
        if (w > best || (w == best && tie == TieBreak::Last)) {
          best = w;
          pick = {a, b};
        }
      }
    }
    in[pick.second] = true;
    tree.edges.push_back(pick);
  }
  return tree;
}

bool gjsw_completable(const Graph& g, const PartialMatrix& t) {
  require_chordal(g);
  if (t.m != g.order()) throw Error(ErrorKind::OrderMismatch, "partial matrix and graph orders differ");
  for (const auto& c : maximal_cliques(g))
    if (!is_positive_definite(t.principal(c))) return false;
  return true;
}

double chordal_boundary_eval(const Graph& g, const PartialMatrix& t) {
  require_chordal(g);
  if (t.m != g.order()) throw Error(ErrorKind::OrderMismatch, "partial matrix and graph orders differ");
  double prod = 1.0;
  for (const auto& c : maximal_cliques(g)) {
    Matrix sub(c.size(), c.size());
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = 0; b < c.size(); ++b) sub(a, b) = t.at(c[a], c[b]);
    prod *= determinant(sub);
  }
  return prod;
}

SymMatrix chordal_mle(const Graph& g, const SymMatrix& s, TieBreak tie) {
  if (s.order() != g.order()) throw Error(ErrorKind::OrderMismatch, "matrix and graph orders differ");
  const CliqueTree tree = clique_tree(g, tie);
  SymMatrix k(g.order());
  for (const auto& c : tree.cliques) add_padded_inverse(k, s, c, 1.0);
  for (const auto& sep : tree.separators()) add_padded_inverse(k, s, sep, -1.0);
  return inverse(k);
}

std::size_t min_vertex_separator(const Graph& g, const std::vector<std::size_t>& a,
                                 const std::vector<std::size_t>& b) {
  const std::size_t m = g.order();
  // Node v_in = 2v, v_out = 2v + 1, source 2m, sink 2m + 1.
  const std::size_t n = 2 * m + 2;
  const std::size_t src = 2 * m;
  const std::size_t snk = 2 * m + 1;
  const int inf = static_cast<int>(m) + 1;
  std::vector<std::vector<int>> cap(n, std::vector<int>(n, 0));
  for (std::size_t v = 0; v < m; ++v) cap[2 * v][2 * v + 1] = 1;
  for (const auto& [i, j] : g.edges()) {
    cap[2 * i + 1][2 * j] = inf;
    cap[2 * j + 1][2 * i] = inf;
  }
  for (std::size_t v : a) cap[src][2 * v] = inf;
  for (std::size_t v : b) cap[2 * v + 1][snk] = inf;

  std::size_t flow = 0;
  for (;;) {
    std::vector<long> parent(n, -1);
    parent[src] = static_cast<long>(src);
    std::queue<std::size_t> q;
    q.push(src);
    while (!q.empty() && parent[snk] < 0) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t v = 0; v < n; ++v)
        if (parent[v] < 0 && cap[u][v] > 0) {
          parent[v] = static_cast<long>(u);
          q.push(v);
        }
    }
    if (parent[snk] < 0) break;
    int aug = inf;
    for (std::size_t v = snk; v != src; v = static_cast<std::size_t>(parent[v]))
      aug = std::min(aug, cap[static_cast<std::size_t>(parent[v])][v]);
    for (std::size_t v = snk; v != src; v = static_cast<std::size_t>(parent[v])) {
      const auto u = static_cast<std::size_t>(parent[v]);
      cap[u][v] -= aug;
      cap[v][u] += aug;
    }
    flow += static_cast<std::size_t>(aug);
  }
  return flow;
}

std::vector<SeparationConstraint> st_constraints(const Graph& g, std::size_t max_set) {
  const std::size_t m = g.order();
  if (m > 20) throw Error(ErrorKind::EnumerationBound, "separation constraints limited to 20 vertices");
  std::vector<std::vector<std::size_t>> subsets;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > max_set) continue;
    std::vector<std::size_t> s;
    for (std::size_t v = 0; v < m; ++v)
      if (mask >> v & 1u) s.push_back(v);
    subsets.push_back(std::move(s));
  }
  std::vector<SeparationConstraint> out;
  for (std::size_t x = 0; x < subsets.size(); ++x)
    for (std::size_t y = x + 1; y < subsets.size(); ++y) {
      const auto& a = subsets[x];
      const auto& b = subsets[y];
      const std::size_t c = min_vertex_separator(g, a, b);
      if (c + 1 <= std::min(a.size(), b.size())) out.push_back({a, b, c + 1});
    }
  return out;
}

double max_abs_minor(const SymMatrix& s, const std::vector<std::size_t>& rows,
                     const std::vector<std::size_t>& cols, std::size_t k) {
  if (k == 0 || k > rows.size() || k > cols.size()) return 0.0;
  auto subsets = [k](std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = i;
    for (;;) {
      out.push_back(cur);
      std::size_t i = k;
      while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++cur[i - 1];
      for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
  };
  double best = 0.0;
  for (const auto& r : subsets(rows.size()))
    for (const auto& c : subsets(cols.size())) {
      Matrix sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = s(rows[r[i]], cols[c[j]]);
      best = std::max(best, std::abs(determinant(sub)));
    }
  return best;
}

CycleVerdict cycle_angle_membership(const std::vector<double>& x) {
  const std::size_t m = x.size();
  if (m < 3 || m > 24) throw Error(ErrorKind::OutOfRange, "cycle length must be between 3 and 24");
  std::vector<double> theta(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(std::abs(x[i]) < 1.0)) throw Error(ErrorKind::OutOfRange, "cycle entry with |x| >= 1");
    theta[i] = std::acos(x[i]);
  }
  double total = 0.0;
  for (double t : theta) total += t;
  double slack = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    const int size = std::popcount(mask);
    if (size % 2 == 0) continue;
    double in = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1u) in += theta[i];
    const double lhs = in - (total - in);
    slack = std::min(slack, (size - 1) * std::numbers::pi - lhs);
  }
  CycleVerdict v;
  v.value = slack;
  v.verdict = slack > kAngleEpsilon ? Verdict::Inside : slack < -kAngleEpsilon ? Verdict::Outside : Verdict::Boundary;
  return v;
}

double rank2_closure_residual(const std::vector<double>& x) {
  const std::size_t m = x.size();
  if (m < 2 || m > 24) throw Error(ErrorKind::OutOfRange, "cycle length must be between 2 and 24");
  std::vector<double> theta(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (std::abs(x[i]) > 1.0) throw Error(ErrorKind::OutOfRange, "cycle entry with |x| > 1");
    theta[i] = std::acos(std::clamp(x[i], -1.0, 1.0));
  }
  const double two_pi = 2.0 * std::numbers::pi;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << (m - 1)); ++mask) {
    double s = -theta[0];
    for (std::size_t i = 1; i < m; ++i) s += (mask >> (i - 1) & 1u) ? -theta[i] : theta[i];
    const double r = std::remainder(s, two_pi);
    best = std::min(best, std::abs(r));
  }
  return best;
}

Graph suspend(const Graph& g) {
  Graph out(g.order() + 1);
  for (std::size_t v = 0; v < g.order(); ++v) out.add_edge(0, v + 1);
  for (const auto& [i, j] : g.edges()) out.add_edge(i + 1, j + 1);
  return out;
}

SymMatrix schur_reduce_sample(const SymMatrix& s_star) {
  if (s_star.order() < 2) throw Error(ErrorKind::OrderMismatch, "need order at least 2");
  const double s00 = s_star(0, 0);
  if (!(s00 > 0.0)) throw NotPositiveDefinite(0);
  const std::size_t m = s_star.order() - 1;
  SymMatrix out(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j)
      out.set(i, j, s_star(i + 1, j + 1) - s_star(0, i + 1) * s_star(0, j + 1) / s00);
  return out;
}

SymMatrix suspension_mle(const Graph& g, const SymMatrix& s_star) {
  if (s_star.order() != g.order() + 1) throw Error(ErrorKind::OrderMismatch, "sample order must be m + 1");
  if (!is_positive_definite(s_star)) throw Error(ErrorKind::NotPositiveDefinite, "sample matrix");
  const SymMatrix s = schur_reduce_sample(s_star);
  SymMatrix sigma(g.order());
  if (is_chordal(g).chordal) {
    sigma = chordal_mle(g, s);
  } else {
    const LinearModel model = from_graph(g);
    const SolveReport rep = mle(model, model.project(s));
    if (rep.status != SolveStatus::Converged) throw Error(ErrorKind::NoMLE, "base graph MLE did not converge");
    sigma = rep.Sigma;
  }
  const std::size_t m = g.order();
  SymMatrix out(m + 1);
  out.set(0, 0, s_star(0, 0));
  for (std::size_t i = 0; i < m; ++i) {
    out.set(0, i + 1, s_star(0, i + 1));
    for (std::size_t j = i; j < m; ++j)
      out.set(i + 1, j + 1, sigma(i, j) + s_star(i + 1, j + 1) - s(i, j));
  }
  return out;
}

std::vector<double> circulant_cycle_mle(std::size_t m, double x) {
  if (m < 3) throw Error(ErrorKind::OutOfRange, "cycle needs at least 3 vertices");
  ColoredGraph cg;
  cg.order = m;
  cg.vertex_classes.emplace_back();
  for (std::size_t v = 0; v < m; ++v) cg.vertex_classes[0].push_back(v);
  cg.edge_classes.emplace_back();
  for (std::size_t v = 0; v < m; ++v) cg.edge_classes[0].push_back(make_edge(v, (v + 1) % m));
  const LinearModel model = from_colored(cg);
  const SuffStats t{static_cast<double>(m), 2.0 * static_cast<double>(m) * x};
  // Two parameters only, so polish well past the default tolerance.
  MleOptions opts;
  opts.tolerance = 1e-15;
  opts.max_iterations = 100;
  const SolveReport rep = mle(model, t, opts);
  if (rep.status == SolveStatus::Diverged || rep.stationarity > 1e-9)
    throw Error(ErrorKind::NoMLE, "no MLE for this cycle entry");
  std::vector<double> out;
  for (std::size_t k = 2; k <= m / 2; ++k) out.push_back(rep.Sigma(0, k));
  return out;
}

}  // namespace lincon
