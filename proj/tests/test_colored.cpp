#include <filesystem>

#include "doctest.h"
#include "lincon/colored.hpp"
#include "lincon/cones.hpp"
#include "lincon/io.hpp"
#include "lincon/polyeval.hpp"
#include "lincon/sampling.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace lincon;
using support::error_kind;

namespace {

namespace fs = std::filesystem;

fs::path table(const std::string& name) { return default_fixture_root() / "tables" / (name + ".json"); }

ColoredGraph frets_coloring() { return *support::fixture_spec("frets").colored; }

ColoredGraph uniform_cycle(std::size_t m) {
  ColoredGraph cg;
  cg.order = m;
  cg.vertex_classes.emplace_back();
  cg.edge_classes.emplace_back();
  for (std::size_t v = 0; v < m; ++v) {
    cg.vertex_classes[0].push_back(v);
    cg.edge_classes[0].push_back(make_edge(v, (v + 1) % m));
  }
  return cg;
}

double max_boundary_residual(const LinearModel& model, const PolyFamily& h, int count, Rng& rng) {
  double worst = 0.0;
  for (const SuffStats& t : boundary_sample(model, count, rng)) worst = std::max(worst, h.scaled_residual(t.span()));
  return worst;
}

}  // namespace

TEST_CASE("colored models") {
  const LinearModel frets = rcon_model(frets_coloring());
  CHECK(frets.dimension() == 5);
  // The printed pattern: lambda1 on the first diagonal pair, lambda3 on edge 01.
  const SymMatrix k = frets.assemble({1, 2, 3, 4, 5});
  CHECK(k(0, 0) == 1.0);
  CHECK(k(3, 3) == 2.0);
  CHECK(k(0, 1) == 3.0);
  CHECK(k(1, 2) == 4.0);
  CHECK(k(0, 3) == 4.0);
  CHECK(k(2, 3) == 5.0);
  CHECK(k(0, 2) == 0.0);

  for (std::size_t m = 3; m <= 8; ++m) {
    const LinearModel u = rcon_model(uniform_cycle(m));
    CHECK(u.dimension() == 2);
    const SuffStats t = u.project(SymMatrix::identity(m));
    CHECK(t[0] == doctest::Approx(static_cast<double>(m)));
    CHECK(t[1] == doctest::Approx(0.0));
  }
}

TEST_CASE("edge colorings that respect vertex colorings") {
  CHECK(edge_color_respects_vertex_color(frets_coloring()));
  CHECK(edge_color_respects_vertex_color(uniform_cycle(5)));
  CHECK(edge_color_respects_vertex_color(ColoredGraph::discrete(Graph::cycle(5))));
  ColoredGraph alternating = uniform_cycle(4);
  alternating.vertex_classes = {{0, 2}, {1, 3}};
  CHECK(edge_color_respects_vertex_color(alternating));
  ColoredGraph mixed = uniform_cycle(4);
  mixed.vertex_classes = {{0, 1}, {2, 3}};
  CHECK_FALSE(edge_color_respects_vertex_color(mixed));
  ColoredGraph broken = uniform_cycle(4);
  broken.vertex_classes = {{0, 1}};
  CHECK(error_kind([&] { edge_color_respects_vertex_color(broken); }) == ErrorKind::InputError);
}

TEST_CASE("coarsening preserves existence") {
  Rng rng(1);
  const Graph c4 = Graph::cycle(4);
  const ColoredGraph cg = frets_coloring();
  int inside = 0;
  for (int n = 0; n < 100; ++n) {
    SymMatrix s = random_pd(4, rng);
    s = s - rng.uniform(0.0, 0.9) * s.max_abs() * SymMatrix::identity(4);
    for (std::size_t i = 0; i < 4; ++i) s.set(i, i, std::max(s(i, i), 0.05));
    const LinearModel fine = from_graph(c4);
    if (membership(fine, fine.project(s)).verdict == Verdict::Inside) ++inside;
    CHECK(coarsening_monotonicity_check(c4, cg, s));
  }
  CHECK(inside > 0);
  CHECK(inside < 100);
  CHECK(coarsening_monotonicity_check(c4, ColoredGraph::discrete(c4), SymMatrix::identity(4)));
  CHECK(error_kind([&] { coarsening_monotonicity_check(Graph::complete(4), cg, SymMatrix::identity(4)); }) ==
        ErrorKind::InputError);
}

TEST_CASE("Frets' heads end to end") {
  const LinearModel m = rcon_model(frets_coloring());
  const SuffStats t(io::vector_from_json(io::read_json(default_fixture_root() / "frets_t.json")));
  const SymMatrix printed = io::matrix_from_json(io::read_json(default_fixture_root() / "frets_sigma.json"));
  const SolveReport r = mle(m, t);
  REQUIRE(r.status == SolveStatus::Converged);
  CHECK(max_abs_diff(r.Sigma, printed) < 5e-4);
  CHECK(membership(m, t).verdict == Verdict::Inside);
  // The estimate inherits the coloring's symmetries.
  CHECK(r.Sigma(0, 0) == doctest::Approx(r.Sigma(1, 1)).epsilon(1e-9));
  CHECK(r.Sigma(2, 2) == doctest::Approx(r.Sigma(3, 3)).epsilon(1e-9));
  CHECK(r.Sigma(1, 2) == doctest::Approx(r.Sigma(0, 3)).epsilon(1e-9));
  Rng rng(2);
  CHECK(max_boundary_residual(m, builtin_polynomial("ex5_1_HG"), 5, rng) <= 1e-5);
}

TEST_CASE("every tabulated coloring assembles to its pattern") {
  int rows = 0;
  for (const auto& entry : std::filesystem::directory_iterator(default_fixture_root() / "tables")) {
    const io::json j = io::read_json(entry.path());
    const ColoredGraph cg = io::colored_from_json(j);
    const auto pattern = j.at("pattern").get<std::vector<std::vector<int>>>();
    const LinearModel m = rcon_model(cg);
    CAPTURE(entry.path().filename().string());
    REQUIRE(m.dimension() == j.at("d").get<std::size_t>());
    CHECK(m.dimension() == cg.vertex_classes.size() + cg.edge_classes.size());
    std::vector<double> lambda(m.dimension());
    for (std::size_t k = 0; k < lambda.size(); ++k) lambda[k] = static_cast<double>(k + 1);
    const SymMatrix k = m.assemble(CoeffVector(lambda));
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b) CHECK(k(a, b) == static_cast<double>(pattern[a][b]));
    ++rows;
  }
  CHECK(rows == 24);
}

TEST_CASE("boundary polynomials of the tabulated permutation-symmetric colorings") {
  Rng rng(3);
  for (int row = 3; row <= 6; ++row) {
    const io::json j = io::read_json(table("table4_row0" + std::to_string(row)));
    const LinearModel m = rcon_model(io::colored_from_json(j));
    const PolyFamily h = builtin_polynomial(j.at("boundary").get<std::string>());
    CAPTURE(row);
    CHECK(max_boundary_residual(m, h, 5, rng) <= 1e-5);
    // An interior point is not a root.
    CHECK(h.scaled_residual(m.project(random_pd(4, rng)).span()) > 1e-4);
  }
}

TEST_CASE("three-vertex model with a quartic boundary factor") {
  const LinearModel m = support::fixture_model("ex5_3");
  for (const auto& [rank, n] : extreme_rank_sample(m, 30, 4)) {
    CHECK(rank >= 1);
    CHECK(rank <= 2);
  }
  Rng rng(5);
  CHECK(max_boundary_residual(m, builtin_polynomial("ex5_3_HL"), 5, rng) <= 1e-5);
}
