#include <cmath>

#include "doctest.h"
#include "lincon/io.hpp"
#include "lincon/model.hpp"
#include "lincon/polyeval.hpp"
#include "lincon/sampling.hpp"
#include "lincon/solver.hpp"

using namespace lincon;

namespace {

LinearModel ex1_1() {
  return io::model_from_json(io::read_json(default_fixture_root() / "models" / "ex1_1.json")).model;
}

LinearModel frets() {
  return io::model_from_json(io::read_json(default_fixture_root() / "models" / "frets.json")).model;
}

}  // namespace

TEST_CASE("assemble reproduces the three-parameter pattern") {
  const LinearModel m = ex1_1();
  const SymMatrix k = m.assemble({1, 1, 1});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(k(i, j) == (i == j ? 3.0 : 1.0));
  CHECK(m.assemble({0, 0, 0}) == SymMatrix(3));
  CHECK(m.assemble({0, 1, 0}) == m.basis(1).densify());
  CHECK_THROWS_AS(m.assemble({1, 1}), Error);
}

TEST_CASE("project gives the printed statistics") {
  const LinearModel m = ex1_1();
  Rng rng(1);
  const SymMatrix s = random_pd(3, rng);
  const SuffStats t = m.project(s);
  CHECK(t[0] == doctest::Approx(s.trace() + 2 * s(1, 2)));
  CHECK(t[1] == doctest::Approx(s.trace() + 2 * s(0, 2)));
  CHECK(t[2] == doctest::Approx(s.trace() + 2 * s(0, 1)));
  CHECK_THROWS_AS(m.project(SymMatrix(4)), Error);

  const SuffStats c4 = from_graph(Graph::cycle(4)).project(SymMatrix::identity(4));
  CHECK(c4 == SuffStats{1, 1, 1, 1, 0, 0, 0, 0});

  const SymMatrix printed = io::matrix_from_json(io::read_json(default_fixture_root() / "frets_sigma.json"));
  const SuffStats ft = frets().project(printed);
  const SuffStats expected{188.256, 95.408, 133.750, 210.062, 67.302};
  for (std::size_t j = 0; j < 5; ++j) CHECK(ft[j] == doctest::Approx(expected[j]).epsilon(1e-12));
}

TEST_CASE("graph models have one coordinate per vertex and edge") {
  CHECK(from_graph(Graph::complete(3)).dimension() == 6);
  CHECK(from_graph(Graph::cycle(4)).dimension() == 8);
  CHECK(from_graph(Graph::cycle(5)).dimension() == 10);
  CHECK(full_model(4).dimension() == 10);
}

TEST_CASE("colored models") {
  const Graph g = Graph::cycle(5);
  const LinearModel a = from_graph(g);
  const LinearModel b = from_colored(ColoredGraph::discrete(g));
  Rng rng(2);
  for (int n = 0; n < 5; ++n) {
    CoeffVector l(a.dimension());
    for (auto& v : l.values()) v = rng.normal();
    CHECK(a.assemble(l) == b.assemble(l));
  }
  ColoredGraph cg;
  cg.order = 6;
  cg.vertex_classes = {{0, 1, 2, 3, 4, 5}};
  cg.edge_classes.emplace_back();
  for (std::size_t v = 0; v < 6; ++v) cg.edge_classes[0].push_back(make_edge(v, (v + 1) % 6));
  const LinearModel u = from_colored(cg);
  CHECK(u.dimension() == 2);
  const SymMatrix k = u.assemble({2.0, 0.5});
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(k(i, i) == 2.0);
    CHECK(k(i, (i + 1) % 6) == 0.5);
    CHECK(k(i, (i + 2) % 6) == 0.0);
  }
  CHECK(frets().dimension() == 5);
}

TEST_CASE("diagonal models") {
  const LinearModel m = from_diagonal(Matrix::from_rows({{3, 2, 1, 0}, {0, 1, 2, 3}}));
  CHECK(m.dimension() == 2);
  const SymMatrix k = m.assemble({1.0, 2.0});
  CHECK(k(0, 0) == 3.0);
  CHECK(k(1, 1) == 4.0);
  CHECK(k(2, 2) == 5.0);
  CHECK(k(3, 3) == 6.0);
  CHECK(k(0, 1) == 0.0);
  CHECK(from_diagonal(Matrix::from_rows({{1, 1, 1}})).assemble({2.0}) == 2.0 * SymMatrix::identity(3));
  CHECK(from_diagonal(Matrix::from_rows({{1, -1, 0, 0, 0, 0}, {0, 0, 1, -1, 0, 0}, {0, 0, 0, 0, 1, -1}, {1, 1, 1, 1, 1, 1}}))
            .dimension() == 4);
  CHECK_THROWS_AS(from_diagonal(Matrix::from_rows({{1, 2}, {2, 4}})), Error);
}

TEST_CASE("basis validation") {
  CHECK_THROWS_AS(BasisMatrix(3, {{0, 1, 1.0}, {1, 0, 2.0}}), Error);
  CHECK_THROWS_AS(BasisMatrix(3, {{0, 1, 0.0}}), Error);
  CHECK_THROWS_AS(BasisMatrix(3, {{0, 3, 1.0}}), Error);
  CHECK_THROWS_AS(LinearModel(2, {BasisMatrix(2, {{0, 1, 1.0}}), BasisMatrix(2, {{0, 1, 2.0}})}), Error);
}

TEST_CASE("generic random models") {
  const LinearModel a = generic_random(3, 3, 7);
  const LinearModel b = generic_random(3, 3, 7);
  CHECK(a.gram() == b.gram());
  CHECK(a.basis(0).densify() == SymMatrix::identity(3));
  CHECK(spectrum(a.gram())[0] > 0.0);

  const LinearModel full = generic_random(4, 10, 3);
  Rng rng(4);
  const SymMatrix s = random_pd(4, rng);
  const SolveReport r = mle(full, full.project(s));
  CHECK(r.status == SolveStatus::Converged);
  CHECK(max_abs_diff(r.Sigma, s) < 1e-8);
}

TEST_CASE("projection is linear in assembly: project(assemble(l)) = G l") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const LinearModel m = generic_random(4, 5, seed);
    Rng rng(seed + 100);
    CoeffVector l(5);
    for (auto& v : l.values()) v = rng.normal();
    const SuffStats t = m.project(m.assemble(l));
    for (std::size_t a = 0; a < 5; ++a) {
      double g = 0.0;
      for (std::size_t b = 0; b < 5; ++b) g += m.gram()(a, b) * l[b];
      CHECK(t[a] == doctest::Approx(g).epsilon(1e-10));
    }
  }
}

TEST_CASE("Frets statistics are the printed sums of entries") {
  const LinearModel m = frets();
  Rng rng(5);
  for (int n = 0; n < 100; ++n) {
    const SymMatrix s = random_pd(4, rng);
    const SuffStats t = m.project(s);
    CHECK(t[0] == doctest::Approx(s(0, 0) + s(1, 1)));
    CHECK(t[1] == doctest::Approx(s(2, 2) + s(3, 3)));
    CHECK(t[2] == doctest::Approx(2 * s(0, 1)));
    CHECK(t[3] == doctest::Approx(2 * (s(1, 2) + s(0, 3))));
    CHECK(t[4] == doctest::Approx(2 * s(2, 3)));
  }
}

TEST_CASE("the complete graph fiber of a PD matrix is that matrix") {
  Rng rng(6);
  const LinearModel m = from_graph(Graph::complete(4));
  for (int n = 0; n < 5; ++n) {
    const SymMatrix s = random_pd(4, rng);
    CHECK(max_abs_diff(mle(m, m.project(s)).Sigma, s) < 1e-8);
  }
}
