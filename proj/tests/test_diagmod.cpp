#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "lincon/diagmod.hpp"
#include "lincon/io.hpp"
#include "lincon/lp.hpp"
#include "lincon/polyeval.hpp"
#include "lincon/sampling.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace lincon;
using support::error_kind;

namespace {

Matrix fixture_csv(const std::string& name) {
  return io::matrix_from_csv(io::read_text(default_fixture_root() / name));
}

std::vector<double> positive(std::size_t n, Rng& rng) {
  std::vector<double> u(n);
  for (double& x : u) x = rng.uniform(0.5, 2.0);
  return u;
}

// x solves A x = t and 1/x lies in the row space of A.
void check_critical(const Matrix& a, const std::vector<double>& t, const std::vector<double>& x, double tol) {
  const auto ax = a * std::span<const double>(x);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(std::abs(ax[i] - t[i]) <= tol * (1.0 + std::abs(t[i])));
  oracle::Dense rows(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) rows[i].assign(a.row(i).begin(), a.row(i).end());
  std::vector<double> inv(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) inv[j] = 1.0 / x[j];
  double scale = 0.0;
  for (double v : inv) scale = std::max(scale, std::abs(v));
  for (double& v : inv) v /= scale;
  rows.push_back(inv);
  CHECK(oracle::rank(rows, 1e-7) == oracle::rank(std::vector(rows.begin(), rows.end() - 1), 1e-7));
}

}  // namespace

TEST_CASE("linear programs") {
  // min -y0 - y1 with y0 + y1 + y2 = 1.
  const LpResult opt = solve_lp({-1, -1, 0}, Matrix::from_rows({{1, 1, 1}}), {1});
  CHECK(opt.status == LpStatus::Optimal);
  CHECK(opt.value == doctest::Approx(-1.0));
  CHECK(solve_lp({1, 1}, Matrix::from_rows({{1, 1}}), {-1}).status == LpStatus::Infeasible);
  CHECK(solve_lp({-1, 0}, Matrix::from_rows({{1, -1}}), {0}).status == LpStatus::Unbounded);
  const LpResult two = solve_lp({1, 2, 3}, Matrix::from_rows({{1, 1, 1}, {1, -1, 0}}), {2, 0});
  REQUIRE(two.status == LpStatus::Optimal);
  CHECK(two.value == doctest::Approx(3.0));
  CHECK(two.y[0] == doctest::Approx(1.0));
}

TEST_CASE("analytic centers") {
  const Matrix ones = Matrix::from_rows({{1, 1, 1, 1}});
  for (double x : analytic_center(ones, {4})) CHECK(x == doctest::Approx(1.0).epsilon(1e-10));

  const Matrix cube = fixture_csv("ex3_4_A.csv");
  for (double x : analytic_center(cube, {0, 0, 0, 6})) CHECK(x == doctest::Approx(1.0).epsilon(1e-9));

  const Matrix a = fixture_csv("ex3_2_A.csv");
  const PolyFamily quadrics = builtin_polynomial("ex3_2_quadrics");
  Rng rng(1);
  for (int n = 0; n < 20; ++n) {
    const auto t = a * std::span<const double>(positive(4, rng));
    const auto x = analytic_center(a, t);
    check_critical(a, t, x, 1e-9);
    CHECK(quadrics.scaled_residual(x) <= 1e-8);
  }

  // Duality: the center of A (1/u) is u whenever 1/u is in the row space.
  for (int n = 0; n < 20; ++n) {
    Matrix b = random_matrix(2, 5, rng);
    for (std::size_t j = 0; j < 5; ++j) b(0, j) = rng.uniform(1.0, 2.0);
    const std::vector<double> y{1.0, rng.uniform(-0.4, 0.4)};
    const auto u = b.transpose() * std::span<const double>(y);
    const auto x = analytic_center(b, reciprocal_map(b, u));
    for (std::size_t j = 0; j < 5; ++j) CHECK(std::abs(x[j] * u[j] - 1.0) < 1e-8);
  }

  CHECK(error_kind([] { analytic_center(Matrix::from_rows({{1, -1}}), {1}); }) == ErrorKind::NoMLE);
  CHECK(error_kind([&] { analytic_center(ones, {-1}); }) == ErrorKind::NoMLE);
}

TEST_CASE("bounded regions of generic arrangements") {
  Rng rng(2);
  for (const auto& [d, m] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 4}, {2, 6}, {3, 6}, {3, 7}})
    for (int n = 0; n < 3; ++n) {
      const Matrix a = random_matrix(d, m, rng, 0.1, 1.0);
      const int beta = beta_invariant(a, static_cast<std::uint64_t>(n));
      CHECK(beta == oracle::binom(static_cast<long>(m) - 1, static_cast<long>(d) - 1));
      CHECK(critical_point_count(a, a * std::span<const double>(positive(m, rng))) == beta);
    }
}

TEST_CASE("bounded regions of special arrangements") {
  const Matrix cube = fixture_csv("ex3_4_A.csv");
  CHECK(beta_invariant(cube) == 7);
  CHECK(beta_invariant(fixture_csv("ex3_2_A.csv")) == 3);
  for (std::uint64_t seed = 1; seed < 5; ++seed) CHECK(beta_invariant(cube, seed) == 7);
  CHECK(beta_invariant(cube) <= oracle::binom(5, 3));

  // Direct sums of cycle matroids: the fiber is a product of simplices.
  CHECK(beta_invariant(Matrix::from_rows({{1, 1, 1, 1, 1}})) == 1);
  CHECK(beta_invariant(Matrix::from_rows({{1, 1, 0, 0, 0}, {0, 0, 1, 1, 1}})) == 1);
  CHECK(beta_invariant(Matrix::from_rows({{1, 1, 1, 0, 0, 0}, {0, 0, 0, 1, 1, 1}})) == 1);

  Rng rng(3);
  const auto t = cube * std::span<const double>(positive(6, rng));
  const auto pts = critical_points(cube, t);
  CHECK(pts.size() == 7);
  for (const auto& x : pts) check_critical(cube, t, x, 1e-8);
}

TEST_CASE("circuits") {
  Rng rng(4);
  for (int n = 0; n < 20; ++n) {
    Matrix a = random_matrix(2 + n % 2, 5, rng);
    if (n % 4 == 0)
      for (std::size_t i = 0; i < a.rows(); ++i) a(i, 4) = a(i, 0) + a(i, 1);
    std::set<std::vector<std::size_t>> supports;
    for (const Circuit& c : circuits(a)) {
      supports.insert(c.support);
      CHECK(c.coefficients.front() > 0.0);
      for (std::size_t i = 0; i < a.rows(); ++i) {
        double acc = 0.0, scale = 0.0;
        for (std::size_t k = 0; k < c.support.size(); ++k) {
          acc += a(i, c.support[k]) * c.coefficients[k];
          scale += std::abs(a(i, c.support[k]) * c.coefficients[k]);
        }
        CHECK(std::abs(acc) <= 1e-9 * scale);
      }
    }
    CHECK(supports == oracle::circuit_supports(a));
  }

  const Matrix a = fixture_csv("ex3_2_A.csv");
  const auto cs = circuits(a);
  CHECK(cs.size() == 4);
  bool found = false;
  for (const Circuit& c : cs)
    if (c.support == std::vector<std::size_t>{0, 1, 2}) {
      found = true;
      CHECK(c.integral);
      CHECK(c.coefficients == std::vector<double>{1, -2, 1});
      // Vanishes at the inverse of a point with 1/x in the row space.
      const SparsePolynomial p = circuit_polynomial(c, 4);
      const std::vector<double> y{0.7, 1.3};
      const auto u = a.transpose() * std::span<const double>(y);
      std::vector<double> x(4);
      for (std::size_t j = 0; j < 4; ++j) x[j] = 1.0 / u[j];
      CHECK(p.scaled_residual(x) < 1e-12);
      CHECK(p.total_degree() == 2);
    }
  CHECK(found);

  const auto loops = circuits(Matrix::from_rows({{1, 0, 2}, {0, 0, 1}}));
  CHECK(std::any_of(loops.begin(), loops.end(), [](const Circuit& c) { return c.support == std::vector<std::size_t>{1}; }));
}

TEST_CASE("reciprocal map") {
  const Matrix a = fixture_csv("ex3_2_A.csv");
  const auto t = reciprocal_map(a, {1, 1, 1, 1});
  CHECK(t == std::vector<double>{6, 6});
  const auto id = reciprocal_map(Matrix::identity(3), {2, 4, 0.5});
  CHECK(id == std::vector<double>{0.5, 0.25, 2});
  CHECK(error_kind([&] { reciprocal_map(a, {1, 0, 1, 1}); }) == ErrorKind::DomainError);
  CHECK(error_kind([&] { reciprocal_map(a, {1, -1, 1, 1}); }) == ErrorKind::DomainError);
  CHECK(matrix_rank(a) == 2);
}
