#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lincon/cones.hpp"
#include "lincon/graphops.hpp"
#include "lincon/polyeval.hpp"
#include "lincon/sampling.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace lincon;
using support::error_kind;

namespace {

Graph random_graph(std::size_t m, double p, Rng& rng) {
  Graph g(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (rng.uniform() < p) g.add_edge(i, j);
  return g;
}

// Unit-diagonal partial matrix on the m-cycle, x_i on edge (i, i+1 mod m).
PartialMatrix unit_cycle(const std::vector<double>& x) {
  PartialMatrix p;
  p.m = x.size();
  p.diagonal.assign(x.size(), 1.0);
  for (std::size_t i = 0; i < x.size(); ++i) p.known[make_edge(i, (i + 1) % x.size())] = x[i];
  return p;
}

SymMatrix correlation(const SymMatrix& s) {
  SymMatrix c(s.order());
  for (std::size_t i = 0; i < s.order(); ++i)
    for (std::size_t j = i; j < s.order(); ++j) c.set(i, j, s(i, j) / std::sqrt(s(i, i) * s(j, j)));
  return c;
}

std::vector<double> cycle_entries(const SymMatrix& s) {
  std::vector<double> x;
  for (std::size_t i = 0; i < s.order(); ++i) x.push_back(s(i, (i + 1) % s.order()));
  return x;
}

// The sample agrees with sigma on the diagonal and edges, and inverse(sigma)
// vanishes off the graph.
void check_graph_mle(const Graph& g, const SymMatrix& s, const SymMatrix& sigma, double tol) {
  const auto k = oracle::inverse(oracle::dense(sigma));
  const double scale = std::max(1.0, s.max_abs());
  for (std::size_t i = 0; i < g.order(); ++i)
    for (std::size_t j = i; j < g.order(); ++j) {
      if (i == j || g.has_edge(i, j))
        CHECK(std::abs(sigma(i, j) - s(i, j)) <= tol * scale);
      else
        CHECK(std::abs(k[i][j]) <= tol * std::max(1.0, std::abs(k[i][i])));
    }
}

}  // namespace

TEST_CASE("chordality and maximal cliques agree with enumeration") {
  Rng rng(1);
  for (int n = 0; n < 200; ++n) {
    const std::size_t m = 3 + n % 6;
    const Graph g = random_graph(m, rng.uniform(0.2, 0.9), rng);
    const ChordalityReport rep = is_chordal(g);
    CHECK(rep.chordal == oracle::chordal(g));
    CHECK(maximal_cliques(g) == oracle::maximal_cliques(g));
    if (!rep.chordal) continue;
    // Later neighbors of each vertex in the ordering form a clique.
    REQUIRE(rep.ordering.size() == m);
    std::vector<std::size_t> pos(m);
    for (std::size_t k = 0; k < m; ++k) pos[rep.ordering[k]] = k;
    for (std::size_t v = 0; v < m; ++v) {
      std::vector<std::size_t> later;
      for (std::size_t w : g.neighbors(v))
        if (pos[w] > pos[v]) later.push_back(w);
      CHECK(oracle::is_clique(g, later));
    }
  }
}

TEST_CASE("chordal graphs: clique test matches membership") {
  Rng rng(2);
  int checked = 0;
  for (int n = 0; n < 100; ++n) {
    const std::size_t m = 4 + n % 3;
    const Graph g = n % 2 ? random_tree(m, rng) : random_triangulated_cycle(m, rng);
    SymMatrix s = random_pd(m, rng);
    if (n % 3 == 0) s = s - 0.6 * s.max_abs() * SymMatrix::identity(m);
    const PartialMatrix p = PartialMatrix::restrict(s, g);
    const MembershipVerdict mv = membership(from_graph(g), graph_statistics(g, p));
    if (std::abs(mv.value) < 1e-5) continue;
    ++checked;
    CHECK(gjsw_completable(g, p) == (mv.verdict == Verdict::Inside));
    const double prod = chordal_boundary_eval(g, p);
    double direct = 1.0;
    for (const auto& c : oracle::maximal_cliques(g)) direct *= oracle::det(oracle::dense(p.principal(c)));
    CHECK(prod == doctest::Approx(direct).epsilon(1e-9));
  }
  CHECK(checked > 50);
  CHECK(error_kind([] { gjsw_completable(Graph::cycle(4), unit_cycle({0, 0, 0, 0})); }) == ErrorKind::NotChordal);
}

TEST_CASE("closed-form chordal MLE") {
  Rng rng(3);
  SUBCASE("complete graph returns the sample") {
    const SymMatrix s = random_pd(4, rng);
    CHECK(max_abs_diff(chordal_mle(Graph::complete(4), s), s) < 1e-12);
  }
  SUBCASE("path fills in by products") {
    const SymMatrix s = random_pd(3, rng);
    const SymMatrix sigma = chordal_mle(Graph::path(3), s);
    CHECK(sigma(0, 2) == doctest::Approx(s(0, 1) * s(1, 2) / s(1, 1)).epsilon(1e-12));
  }
  SUBCASE("agrees with Newton and with itself under either tie-break") {
    for (int n = 0; n < 50; ++n) {
      const std::size_t m = 4 + n % 4;
      const Graph g = n % 2 ? random_tree(m, rng) : random_triangulated_cycle(m, rng);
      const SymMatrix s = random_pd(m, rng);
      const SymMatrix a = chordal_mle(g, s, TieBreak::First);
      const SymMatrix b = chordal_mle(g, s, TieBreak::Last);
      CHECK(max_abs_diff(a, b) < 1e-10);
      check_graph_mle(g, s, a, 1e-9);
      const LinearModel model = from_graph(g);
      CHECK(max_abs_diff(a, mle(model, model.project(s)).Sigma) < 1e-7 * std::max(1.0, s.max_abs()));
    }
  }
  SUBCASE("clique sum at a vertex assembles blockwise") {
    // Triangle {0,1,2} and edge {2,3} glued at 2.
    const Graph g(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
    const SymMatrix s = random_pd(4, rng);
    const auto k = oracle::inverse(oracle::dense(chordal_mle(g, s)));
    const std::vector<std::size_t> tri{0, 1, 2}, edge{2, 3};
    const auto kt = oracle::inverse(oracle::dense(s.principal(tri)));
    const auto ke = oracle::inverse(oracle::dense(s.principal(edge)));
    oracle::Dense expect(4, std::vector<double>(4, 0.0));
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) expect[tri[a]][tri[b]] += kt[a][b];
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) expect[edge[a]][edge[b]] += ke[a][b];
    expect[2][2] -= 1.0 / s(2, 2);
    CHECK(oracle::max_abs_diff(k, expect) < 1e-9);
  }
  CHECK(error_kind([&] { chordal_mle(Graph::cycle(4), random_pd(4, rng)); }) == ErrorKind::NotChordal);
}

TEST_CASE("minimum vertex separators agree with brute force") {
  Rng rng(4);
  for (int n = 0; n < 100; ++n) {
    const std::size_t m = 4 + n % 4;
    const Graph g = random_graph(m, 0.4, rng);
    std::vector<std::size_t> a, b;
    for (std::size_t v = 0; v < m; ++v) {
      const double u = rng.uniform();
      if (u < 0.3) a.push_back(v);
      else if (u < 0.6) b.push_back(v);
    }
    if (a.empty() || b.empty()) continue;
    CHECK(min_vertex_separator(g, a, b) == oracle::min_separator(g, a, b));
  }
  CHECK(min_vertex_separator(Graph::cycle(4), {0}, {0}) == 1);
}

TEST_CASE("separation constraints") {
  CHECK(st_constraints(Graph::complete(5)).empty());
  const auto c4 = st_constraints(Graph::cycle(4), 2);
  bool opposite = false;
  for (const auto& c : c4) {
    CHECK(c.size == oracle::min_separator(Graph::cycle(4), c.a, c.b) + 1);
    if (c.a == std::vector<std::size_t>{0, 2} && c.b == std::vector<std::size_t>{1, 3}) opposite = true;
  }
  CHECK_FALSE(opposite);

  // Every constraint holds on matrices of the model.
  const Graph c5 = Graph::cycle(5);
  const LinearModel model = from_graph(c5);
  const auto cons = st_constraints(c5, 3);
  CHECK_FALSE(cons.empty());
  Rng rng(5);
  for (int n = 0; n < 5; ++n) {
    const SymMatrix sigma = SymMatrix::from_rows(oracle::inverse(oracle::dense(model.assemble(random_interior(model, rng)))));
    for (const auto& c : cons) {
      const double scale = std::pow(std::max(1.0, sigma.max_abs()), static_cast<double>(c.size));
      CHECK(max_abs_minor(sigma, c.a, c.b, c.size) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("cycle completability by angles") {
  CHECK(cycle_angle_membership({0, 0, 0, 0}).verdict == Verdict::Inside);
  CHECK(cycle_angle_membership({0.9, 0.9, 0.9, -0.9}).verdict == Verdict::Outside);
  CHECK(cycle_angle_membership({-0.4, -0.4, -0.4}).verdict == Verdict::Inside);
  CHECK(cycle_angle_membership({-0.9, -0.9, -0.9}).verdict == Verdict::Outside);
  CHECK(error_kind([] { cycle_angle_membership({1.0, 0, 0, 0}); }) == ErrorKind::OutOfRange);
  CHECK(error_kind([] { cycle_angle_membership({0, 0}); }) == ErrorKind::OutOfRange);

  Rng rng(6);
  for (int n = 0; n < 100; ++n) {
    const std::size_t m = 3 + n % 6;
    // Restrictions of correlation matrices are inside.
    CHECK(cycle_angle_membership(cycle_entries(correlation(random_pd(m, rng)))).verdict == Verdict::Inside);
    // Rank-two Gram matrices lie in the closure.
    std::vector<double> phi(m);
    for (double& p : phi) p = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const auto gram = oracle::rank2_gram(phi);
    std::vector<double> x;
    for (std::size_t i = 0; i < m; ++i) x.push_back(gram[i][(i + 1) % m]);
    bool unit = false;
    for (double v : x) unit = unit || std::abs(v) > 1.0 - 1e-6;
    if (unit) continue;
    CHECK(cycle_angle_membership(x).value >= -1e-9);
  }
}

TEST_CASE("rank-two closure") {
  Rng rng(7);
  for (int n = 0; n < 200; ++n) {
    const std::size_t m = 3 + n % 6;
    std::vector<double> phi(m);
    for (double& p : phi) p = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const auto gram = oracle::rank2_gram(phi);
    std::vector<double> x;
    for (std::size_t i = 0; i < m; ++i) x.push_back(gram[i][(i + 1) % m]);
    CHECK(rank2_closure_residual(x) < 1e-7);
    CHECK(oracle::rank(gram, 1e-9) <= 2);
  }
  // A strictly interior point has no rank-two completion.
  CHECK(rank2_closure_residual({0.1, 0.1, 0.1}) > 0.1);
  CHECK(rank2_closure_residual({1, 1, 1, 1}) < 1e-12);
  CHECK(rank2_closure_residual({0, 0, 0, 0}) < 1e-12);
}

TEST_CASE("suspension") {
  const Graph w = suspend(Graph::cycle(4));
  CHECK(w.order() == 5);
  CHECK(w.edge_count() == 8);
  for (std::size_t v = 1; v < 5; ++v) CHECK(w.has_edge(0, v));
  CHECK(w.has_edge(1, 4));

  Rng rng(8);
  for (int n = 0; n < 20; ++n) {
    const std::size_t m = 3 + n % 3;
    const SymMatrix s = random_pd(m + 1, rng);
    // The reduced sample is the inverse of a principal block of the inverse.
    const auto full = oracle::inverse(oracle::dense(s));
    oracle::Dense block(m, std::vector<double>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) block[i][j] = full[i + 1][j + 1];
    CHECK(oracle::max_abs_diff(oracle::dense(schur_reduce_sample(s)), oracle::inverse(block)) < 1e-9 * s.max_abs());

    const Graph base = n % 2 ? Graph::cycle(m) : random_tree(m, rng);
    const Graph sg = suspend(base);
    const SymMatrix a = suspension_mle(base, s);
    check_graph_mle(sg, s, a, 1e-7);
    const LinearModel model = from_graph(sg);
    CHECK(max_abs_diff(a, mle(model, model.project(s)).Sigma) < 1e-7 * std::max(1.0, s.max_abs()));
  }
  CHECK(error_kind([] { schur_reduce_sample(SymMatrix(1)); }) == ErrorKind::OrderMismatch);
}

TEST_CASE("uniformly colored cycles") {
  for (std::size_t m = 4; m <= 9; ++m)
    for (double v : circulant_cycle_mle(m, 0.0)) CHECK(std::abs(v) < 1e-12);
  const PolyFamily rel = builtin_polynomial("lemma_circulant_m7");
  for (double x : {-0.5, -0.1, 0.15, 0.35, 0.45}) {
    const auto fill = circulant_cycle_mle(7, x);
    REQUIRE(fill.size() == 2);
    CHECK(rel.parts[0].scaled_residual(std::vector<double>{fill[0], fill[1], x}) <= 1e-9);
    CHECK(rel.parts[1].scaled_residual(std::vector<double>{fill[0], fill[1], x}) <= 1e-9);
  }
  CHECK(error_kind([] { circulant_cycle_mle(7, -0.95); }) == ErrorKind::NoMLE);
  CHECK(error_kind([] { circulant_cycle_mle(2, 0.1); }) == ErrorKind::OutOfRange);
}
