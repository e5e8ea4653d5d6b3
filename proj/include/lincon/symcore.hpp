#pragma once

// Dense symmetric linear algebra used by every other module. Matrices in
// scope are small (order up to ~20), so everything is dense and row-major.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lincon/errors.hpp"

namespace lincon {

// General dense matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<double> column(std::size_t j) const;

  Matrix transpose() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

// Real symmetric matrix of order m >= 1. Entry (i, j) and (j, i) are always
// equal; every mutator writes both.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t order);

  static SymMatrix identity(std::size_t order);
  static SymMatrix diagonal(std::span<const double> diag);
  // Symmetrizes as (M + M^T) / 2.
  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static SymMatrix from_matrix(const Matrix& m);

  std::size_t order() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v;
  }
  // Adds v at (i, j) and, when off-diagonal, at (j, i).
  void add(std::size_t i, std::size_t j, double v) {
    a_[i * n_ + j] += v;
    if (i != j) a_[j * n_ + i] += v;
  }

  double max_abs() const;
  double trace() const;
  SymMatrix principal(std::span<const std::size_t> idx) const;
  Matrix to_matrix() const;
  std::vector<std::vector<double>> to_rows() const;

  SymMatrix& operator+=(const SymMatrix& o);
  SymMatrix& operator-=(const SymMatrix& o);
  SymMatrix& operator*=(double s);

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<double> a_;
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator-(SymMatrix a, const SymMatrix& b);
SymMatrix operator*(double s, SymMatrix a);
Matrix operator*(const SymMatrix& a, const SymMatrix& b);

// max_ij |a_ij - b_ij|
double max_abs_diff(const SymMatrix& a, const SymMatrix& b);

// Largest |M_ij - M_ji| of a square row list; used by readers before
// symmetrizing.
double max_asymmetry(const std::vector<std::vector<double>>& rows);

struct CholeskyFactor {
  Matrix lower;

  std::size_t order() const noexcept { return lower.rows(); }
  std::vector<double> solve(std::span<const double> b) const;
  SymMatrix inverse() const;
  double logdet() const;
};

// Pivots at or below 1e-13 times the largest diagonal entry are treated as
// non-positive.
inline constexpr double kPivotTolerance = 1e-13;

CholeskyFactor cholesky(const SymMatrix& m);
std::optional<CholeskyFactor> try_cholesky(const SymMatrix& m);
bool is_positive_definite(const SymMatrix& m);

double logdet(const SymMatrix& m);
SymMatrix inverse(const SymMatrix& m);

// <A, B> = trace(A B).
double inner(const SymMatrix& a, const SymMatrix& b);

// M[keep, keep] - M[keep, rest] M[rest, rest]^{-1} M[rest, keep].
SymMatrix schur_complement(const SymMatrix& m, std::span<const std::size_t> keep);

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k belongs to values[k]
};

// Cyclic Jacobi; throws ConvergenceFailure after 100 sweeps.
EigenDecomposition eigen(const SymMatrix& m);
std::vector<double> spectrum(const SymMatrix& m);

// Gaussian elimination with partial pivoting. Throws RankDeficient on an
// exactly or numerically singular system.
std::vector<double> solve_linear(Matrix a, std::vector<double> b);
double determinant(Matrix a);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace lincon
