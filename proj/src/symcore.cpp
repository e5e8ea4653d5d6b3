#include "lincon/symcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lincon {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix out(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(ErrorKind::LengthMismatch, "ragged matrix rows");
    std::copy(rows[i].begin(), rows[i].end(), out.row(i).begin());
  }
  return out;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::OrderMismatch, "matrix product shapes");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw Error(ErrorKind::LengthMismatch, "matrix-vector shapes");
  std::vector<double> out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(a.row(i), x);
  return out;
}

SymMatrix::SymMatrix(std::size_t order) : n_(order), a_(order * order, 0.0) {
  if (order == 0) throw Error(ErrorKind::OrderMismatch, "symmetric matrix of order 0");
}

SymMatrix SymMatrix::identity(std::size_t order) {
  SymMatrix out(order);
  for (std::size_t i = 0; i < order; ++i) out.set(i, i, 1.0);
  return out;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  SymMatrix out(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) out.set(i, i, diag[i]);
  return out;
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  return from_matrix(Matrix::from_rows(rows));
}

SymMatrix SymMatrix::from_matrix(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::OrderMismatch, "matrix is not square");
  SymMatrix out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) out.set(i, j, 0.5 * (m(i, j) + m(j, i)));
  return out;
}

double SymMatrix::max_abs() const {
  double best = 0.0;
  for (double v : a_) best = std::max(best, std::abs(v));
  return best;
}

double SymMatrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

SymMatrix SymMatrix::principal(std::span<const std::size_t> idx) const {
  SymMatrix out(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a; b < idx.size(); ++b) out.set(a, b, (*this)(idx[a], idx[b]));
  return out;
}

Matrix SymMatrix::to_matrix() const {
  Matrix out(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out(i, j) = (*this)(i, j);
  return out;
}

std::vector<std::vector<double>> SymMatrix::to_rows() const {
  std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
  if (o.n_ != n_) throw Error(ErrorKind::OrderMismatch, "sum of matrices");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
  if (o.n_ != n_) throw Error(ErrorKind::OrderMismatch, "difference of matrices");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

Matrix operator*(const SymMatrix& a, const SymMatrix& b) {
  if (a.order() != b.order()) throw Error(ErrorKind::OrderMismatch, "product of matrices");
  return a.to_matrix() * b.to_matrix();
}

double max_abs_diff(const SymMatrix& a, const SymMatrix& b) {
  if (a.order() != b.order()) throw Error(ErrorKind::OrderMismatch, "max_abs_diff");
  double best = 0.0;
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = 0; j < a.order(); ++j) best = std::max(best, std::abs(a(i, j) - b(i, j)));
  return best;
}

double max_asymmetry(const std::vector<std::vector<double>>& rows) {
  double best = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw Error(ErrorKind::OrderMismatch, "matrix is not square");
    for (std::size_t j = 0; j < i; ++j) best = std::max(best, std::abs(rows[i][j] - rows[j][i]));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Cholesky

namespace {

std::optional<std::size_t> factor_in_place(const SymMatrix& m, Matrix& l) {
  const std::size_t n = m.order();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, m(i, i));
  const double tol = kPivotTolerance * max_diag;
  l = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = m(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (!(pivot > tol) || !std::isfinite(pivot)) return j;
    const double d = std::sqrt(pivot);
    l(j, j) = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / d;
    }
  }
  return std::nullopt;
}

}  // namespace

CholeskyFactor cholesky(const SymMatrix& m) {
  CholeskyFactor f;
  if (auto bad = factor_in_place(m, f.lower)) throw NotPositiveDefinite(*bad);
  return f;
}

std::optional<CholeskyFactor> try_cholesky(const SymMatrix& m) {
  CholeskyFactor f;
  if (factor_in_place(m, f.lower)) return std::nullopt;
  return f;
}

bool is_positive_definite(const SymMatrix& m) { return try_cholesky(m).has_value(); }

std::vector<double> CholeskyFactor::solve(std::span<const double> b) const {
  const std::size_t n = order();
  if (b.size() != n) throw Error(ErrorKind::LengthMismatch, "cholesky solve");
  std::vector<double> y(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) y[i] -= lower(i, k) * y[k];
    y[i] /= lower(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) y[i] -= lower(k, i) * y[k];
    y[i] /= lower(i, i);
  }
  return y;
}

SymMatrix CholeskyFactor::inverse() const {
  const std::size_t n = order();
  SymMatrix out(n);
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const auto col = solve(e);
    e[j] = 0.0;
    for (std::size_t i = j; i < n; ++i) out.set(i, j, col[i]);
  }
  return out;
}

double CholeskyFactor::logdet() const {
  double s = 0.0;
  for (std::size_t i = 0; i < order(); ++i) s += std::log(lower(i, i));
  return 2.0 * s;
}

double logdet(const SymMatrix& m) { return cholesky(m).logdet(); }

SymMatrix inverse(const SymMatrix& m) { return cholesky(m).inverse(); }

double inner(const SymMatrix& a, const SymMatrix& b) {
  if (a.order() != b.order()) throw Error(ErrorKind::OrderMismatch, "inner product");
  double s = 0.0;
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = 0; j < a.order(); ++j) s += a(i, j) * b(i, j);
  return s;
}

SymMatrix schur_complement(const SymMatrix& m, std::span<const std::size_t> keep) {
  const std::size_t n = m.order();
  std::vector<bool> kept(n, false);
  for (std::size_t k : keep) {
    if (k >= n) throw Error(ErrorKind::OutOfRange, "schur_complement index");
    kept[k] = true;
  }
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (!kept[i]) rest.push_back(i);
  SymMatrix out = m.principal(keep);
  if (rest.empty()) return out;
  const CholeskyFactor f = cholesky(m.principal(rest));
  // Columns of M[rest, keep] solved against the eliminated block.
  std::vector<std::vector<double>> solved(keep.size());
  std::vector<double> col(rest.size());
  for (std::size_t b = 0; b < keep.size(); ++b) {
    for (std::size_t r = 0; r < rest.size(); ++r) col[r] = m(rest[r], keep[b]);
    solved[b] = f.solve(col);
  }
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = a; b < keep.size(); ++b) {
      double s = 0.0;
      for (std::size_t r = 0; r < rest.size(); ++r) s += m(keep[a], rest[r]) * solved[b][r];
      out.set(a, b, out(a, b) - s);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Jacobi eigenvalues

EigenDecomposition eigen(const SymMatrix& m) {
  const std::size_t n = m.order();
  Matrix a = m.to_matrix();
  Matrix v = Matrix::identity(n);

  double fro = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) fro += a(i, j) * a(i, j);
  fro = std::sqrt(fro);
  const double target = 1e-12 * fro;

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  bool converged = off_norm() <= target;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    converged = off_norm() <= target;
  }
  if (!converged) throw Error(ErrorKind::ConvergenceFailure, "Jacobi eigenvalues after 100 sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  EigenDecomposition out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> spectrum(const SymMatrix& m) { return eigen(m).values; }

// ---------------------------------------------------------------------------
// General dense solves

namespace {

// LU with partial pivoting in place; returns the sign of the permutation, or
// 0 when a zero pivot is met.
int lu_in_place(Matrix& a, std::vector<double>* b) {
  const std::size_t n = a.rows();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (!(std::abs(a(p, k)) > 1e-300) || std::abs(a(p, k)) <= 1e-15 * scale) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      if (b) std::swap((*b)[k], (*b)[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      a(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      if (b) (*b)[i] -= f * (*b)[k];
    }
  }
  return sign;
}

}  // namespace

std::vector<double> solve_linear(Matrix a, std::vector<double> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw Error(ErrorKind::LengthMismatch, "solve_linear shapes");
  if (lu_in_place(a, &b) == 0) throw Error(ErrorKind::RankDeficient, "singular linear system");
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) b[i] -= a(i, j) * b[j];
    b[i] /= a(i, i);
  }
  return b;
}

double determinant(Matrix a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::OrderMismatch, "determinant of non-square matrix");
  if (a.rows() == 0) return 1.0;
  const int sign = lu_in_place(a, nullptr);
  if (sign == 0) return 0.0;
  double d = sign;
  for (std::size_t i = 0; i < a.rows(); ++i) d *= a(i, i);
  return d;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::LengthMismatch, "dot product");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace lincon
