#pragma once

// Diagonal concentration models, given by a d x m matrix A whose row space is
// L: analytic centers of the fibers, bounded regions of the induced
// hyperplane arrangement, circuits of A and their polynomials.

#include <cstdint>
#include <vector>

#include "lincon/polyeval.hpp"
#include "lincon/symcore.hpp"

namespace lincon {

inline constexpr std::size_t kMaxArrangementSize = 16;
inline constexpr double kRegionMargin = 1e-7;

// argmax sum log x_i over {x > 0 : A x = t}, computed from the dual problem.
// Throws NoMLE when t is not in the interior of pos(A) or the fiber is
// unbounded.
std::vector<double> analytic_center(const Matrix& a, const std::vector<double>& t);

// Number of bounded regions cut out of the fiber {A x = A u} by the
// coordinate hyperplanes, for a generic u > 0 drawn from the seed. Throws
// EnumerationBound, ConvergenceFailure (no nondegenerate u in 10 draws).
int beta_invariant(const Matrix& a, std::uint64_t seed = 0);

// One local maximizer of sum log |x_i| per bounded region of {A x = t}.
std::vector<std::vector<double>> critical_points(const Matrix& a, const std::vector<double>& t);
int critical_point_count(const Matrix& a, const std::vector<double>& t);

struct Circuit {
  std::vector<std::size_t> support;
  // Kernel vector on the support; first entry positive. Cleared to the
  // smallest integer vector when every entry is near a small rational.
  std::vector<double> coefficients;
  bool integral = false;
};

// Minimal dependent column sets of A with their kernel vectors. Throws
// EnumerationBound.
std::vector<Circuit> circuits(const Matrix& a);

// sum_{i in supp} v_i prod_{j in supp, j != i} x_j, in variables x1..xm.
SparsePolynomial circuit_polynomial(const Circuit& c, std::size_t m);
std::vector<SparsePolynomial> circuit_generators(const Matrix& a);

// A applied to 1/u. Throws DomainError unless u > 0.
std::vector<double> reciprocal_map(const Matrix& a, const std::vector<double>& u);

// Numerical rank of a by Gaussian elimination with relative tolerance.
std::size_t matrix_rank(const Matrix& a, double rel_tol = 1e-10);

}  // namespace lincon
