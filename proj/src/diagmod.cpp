#include "lincon/diagmod.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lincon/lp.hpp"
#include "lincon/random.hpp"

namespace lincon {

namespace {

void check_size(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) throw Error(ErrorKind::InputError, "empty matrix A");
  if (a.cols() > kMaxArrangementSize)
    throw Error(ErrorKind::EnumerationBound, "at most " + std::to_string(kMaxArrangementSize) + " columns");
}

std::vector<double> at_times(const Matrix& a, std::span<const double> lambda) {
  std::vector<double> w(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) w[j] += a(i, j) * lambda[i];
  return w;
}

// A diag(h) A^T.
SymMatrix weighted_gram(const Matrix& a, const std::vector<double>& h) {
  SymMatrix g(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = i; k < a.rows(); ++k) {
      double acc = 0.0;
      for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * h[j] * a(k, j);
      g.set(i, k, acc);
    }
  return g;
}

std::vector<double> sym_solve(const SymMatrix& g, const std::vector<double>& b) {
  if (auto c = try_cholesky(g)) return c->solve(b);
  return solve_linear(g.to_matrix(), b);
}

struct Region {
  std::vector<int> sign;
  double margin = -std::numeric_limits<double>::infinity();
  std::vector<double> point;
};

bool recession_trivial(const Matrix& a, const std::vector<int>& sign) {
  const std::size_t d = a.rows(), m = a.cols();
  Matrix e(d + 1, m);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < m; ++j) e(i, j) = a(i, j) * sign[j];
  for (std::size_t j = 0; j < m; ++j) e(d, j) = 1.0;
  std::vector<double> f(d + 1, 0.0);
  f[d] = 1.0;
  return solve_lp(std::vector<double>(m, 0.0), e, f).status == LpStatus::Infeasible;
}

// Largest s in [-1, 1] with sign_i x_i >= s for some x in {A x = b}; -inf if
// none.
Region max_margin(const Matrix& a, const std::vector<double>& b, const std::vector<int>& sign) {
  const std::size_t d = a.rows(), m = a.cols();
  // Variables z (m), s' = s + 1, slack w; x_i = sign_i (z_i + s' - 1).
  Matrix e(d + 1, m + 2);
  std::vector<double> f(d + 1, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    double as = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      e(i, j) = a(i, j) * sign[j];
      as += a(i, j) * sign[j];
    }
    e(i, m) = as;
    f[i] = b[i] + as;
  }
  e(d, m) = 1.0;
  e(d, m + 1) = 1.0;
  f[d] = 2.0;
  std::vector<double> c(m + 2, 0.0);
  c[m] = -1.0;
  const LpResult r = solve_lp(c, e, f);
  Region reg;
  reg.sign = sign;
  if (r.status != LpStatus::Optimal) return reg;
  reg.margin = r.y[m] - 1.0;
  reg.point.resize(m);
  for (std::size_t j = 0; j < m; ++j) reg.point[j] = sign[j] * (r.y[j] + reg.margin);
  return reg;
}

std::vector<Region> bounded_regions(const Matrix& a, const std::vector<double>& b) {
  const std::size_t m = a.cols();
  std::vector<Region> out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> sign(m);
    for (std::size_t j = 0; j < m; ++j) sign[j] = (mask >> j & 1u) ? -1 : 1;
    if (!recession_trivial(a, sign)) continue;
    out.push_back(max_margin(a, b, sign));
  }
  return out;
}

// Maximizes sum log(sign_i x_i) on {A x = A x0} from the interior point x0.
std::optional<std::vector<double>> region_critical_point(const Matrix& a, const std::vector<int>& sign,
                                                         std::vector<double> x) {
  const std::size_t m = a.cols();
  auto phi = [&](const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s -= std::log(sign[j] * y[j]);
    return s;
  };
  double prev_dec = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 200; ++it) {
    std::vector<double> g(m), hinv(m);
    for (std::size_t j = 0; j < m; ++j) {
      g[j] = -1.0 / x[j];
      hinv[j] = x[j] * x[j];
    }
    // Delta = -Hinv (g + A^T nu), with A Delta = 0.
    std::vector<double> rhs(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < m; ++j) rhs[i] -= a(i, j) * hinv[j] * g[j];
    const auto nu = sym_solve(weighted_gram(a, hinv), rhs);
    const auto atnu = at_times(a, nu);
    std::vector<double> dx(m);
    double dec2 = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      dx[j] = -hinv[j] * (g[j] + atnu[j]);
      dec2 -= g[j] * dx[j];
    }
    if (dec2 <= 1e-20 || (dec2 < 1e-12 && dec2 >= 0.5 * prev_dec)) return x;
    prev_dec = dec2;
    const double f0 = phi(x);
    double alpha = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
      std::vector<double> y(m);
      bool ok = true;
      for (std::size_t j = 0; j < m; ++j) {
        y[j] = x[j] + alpha * dx[j];
        if (!(sign[j] * y[j] > 0.0)) ok = false;
      }
      if (!ok) continue;
      if (phi(y) <= f0 - 1e-4 * alpha * dec2 || (dec2 < 1e-12 && phi(y) <= f0)) {
        x = std::move(y);
        moved = true;
        break;
      }
    }
    if (!moved) return dec2 <= 1e-10 ? std::optional(x) : std::nullopt;
  }
  return std::nullopt;
}

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

// p/q with q <= max_den approximating x within tol, by continued fractions.
std::optional<std::pair<long long, long long>> rationalize(double x, long long max_den, double tol) {
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(r);
    if (std::abs(fl) > 1e15) break;
    const auto a = static_cast<long long>(fl);
    const long long h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= tol) return std::pair(h1, k1);
    const double frac = r - fl;
    if (frac < 1e-300) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

}  // namespace

std::vector<double> analytic_center(const Matrix& a, const std::vector<double>& t) {
  const std::size_t d = a.rows(), m = a.cols();
  if (t.size() != d) throw Error(ErrorKind::LengthMismatch, "statistic length");
  if (d == 0 || m == 0) throw Error(ErrorKind::InputError, "empty matrix A");

  // Start with A^T lambda >= 1: variables lambda+, lambda-, slack.
  Matrix e(m, 2 * d + m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      e(j, i) = a(i, j);
      e(j, d + i) = -a(i, j);
    }
    e(j, 2 * d + j) = -1.0;
  }
  std::vector<double> cost(2 * d + m, 0.0);
  for (std::size_t i = 0; i < 2 * d; ++i) cost[i] = 1.0;
  const LpResult start = solve_lp(cost, e, std::vector<double>(m, 1.0));
  if (start.status != LpStatus::Optimal)
    throw Error(ErrorKind::NoMLE, "no positive vector in the row space; fibers are unbounded");
  std::vector<double> lambda(d);
  for (std::size_t i = 0; i < d; ++i) lambda[i] = start.y[i] - start.y[d + i];

  auto value = [&](const std::vector<double>& l, const std::vector<double>& w) {
    double v = dot(t, l);
    for (double x : w) v -= std::log(x);
    return v;
  };
  auto w = at_times(a, lambda);
  for (double x : w)
    if (!(x > 0.0)) throw Error(ErrorKind::NoMLE, "start point left the dual cone");
  double f = value(lambda, w);
  double prev_dec = std::numeric_limits<double>::infinity();
  for (int it = 0;; ++it) {
    if (it > 500 || norm2(lambda) > 1e12) throw Error(ErrorKind::NoMLE, "t is not in the interior of pos(A)");
    std::vector<double> g(t), h(m);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < d; ++i) g[i] -= a(i, j) / w[j];
      h[j] = 1.0 / (w[j] * w[j]);
    }
    auto dir = sym_solve(weighted_gram(a, h), g);
    const double dec2 = dot(g, dir);
    if (dec2 <= 1e-24 || (dec2 < 1e-14 && dec2 >= 0.5 * prev_dec)) break;
    prev_dec = dec2;
    double alpha = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 80; ++ls, alpha *= 0.5) {
      std::vector<double> trial(d);
      for (std::size_t i = 0; i < d; ++i) trial[i] = lambda[i] - alpha * dir[i];
      auto tw = at_times(a, trial);
      if (std::any_of(tw.begin(), tw.end(), [](double x) { return !(x > 0.0); })) continue;
      const double tf = value(trial, tw);
      if (tf <= f - 1e-4 * alpha * dec2 || (dec2 < 1e-14 && tf <= f)) {
        lambda = std::move(trial);
        w = std::move(tw);
        f = tf;
        moved = true;
        break;
      }
    }
    if (!moved) {
      if (dec2 < 1e-12) break;
      throw Error(ErrorKind::NoMLE, "analytic center line search failed");
    }
  }
  std::vector<double> x(m);
  for (std::size_t j = 0; j < m; ++j) x[j] = 1.0 / w[j];
  return x;
}

int beta_invariant(const Matrix& a, std::uint64_t seed) {
  check_size(a);
  const std::size_t m = a.cols();
  Rng rng(seed);
  for (int draw = 0; draw < 10; ++draw) {
    std::vector<double> u(m);
    for (auto& v : u) v = rng.uniform(1.0, 2.0);
    const auto b = a * std::span<const double>(u);
    int count = 0;
    bool degenerate = false;
    for (const auto& r : bounded_regions(a, b)) {
      if (r.margin >= kRegionMargin)
        ++count;
      else if (r.margin > -1e-9)
        degenerate = true;
    }
    if (!degenerate) return count;
  }
  throw Error(ErrorKind::ConvergenceFailure, "no generic point found for the arrangement");
}

std::vector<std::vector<double>> critical_points(const Matrix& a, const std::vector<double>& t) {
  check_size(a);
  if (t.size() != a.rows()) throw Error(ErrorKind::LengthMismatch, "statistic length");
  std::vector<std::vector<double>> out;
  for (const auto& r : bounded_regions(a, t)) {
    if (r.margin < kRegionMargin) continue;
    if (auto x = region_critical_point(a, r.sign, r.point)) out.push_back(std::move(*x));
  }
  return out;
}

int critical_point_count(const Matrix& a, const std::vector<double>& t) {
  return static_cast<int>(critical_points(a, t).size());
}

std::size_t matrix_rank(const Matrix& a, double rel_tol) {
  Matrix m = a;
  const std::size_t rows = m.rows(), cols = m.cols();
  double scale = 0.0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) scale = std::max(scale, std::abs(m(i, j)));
  if (scale == 0.0) return 0;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    for (std::size_t i = rank + 1; i < rows; ++i)
      if (std::abs(m(i, c)) > std::abs(m(p, c))) p = i;
    if (std::abs(m(p, c)) <= rel_tol * scale) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m(rank, j), m(p, j));
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const double f = m(i, c) / m(rank, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) -= f * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

std::vector<Circuit> circuits(const Matrix& a) {
  check_size(a);
  const std::size_t m = a.cols();
  const std::size_t max_size = std::min(m, matrix_rank(a) + 1);
  std::vector<Circuit> out;
  std::vector<std::uint32_t> found;
  for (std::size_t k = 1; k <= max_size; ++k) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      std::uint32_t mask = 0;
      for (std::size_t j : idx) mask |= 1u << j;
      const bool contains = std::any_of(found.begin(), found.end(), [&](std::uint32_t c) { return (c & mask) == c; });
      if (!contains) {
        Matrix sub(a.rows(), k);
        for (std::size_t i = 0; i < a.rows(); ++i)
          for (std::size_t c = 0; c < k; ++c) sub(i, c) = a(i, idx[c]);
        if (matrix_rank(sub) < k) {
          // Smallest eigenvector of sub^T sub spans the kernel.
          SymMatrix g(k);
          for (std::size_t p = 0; p < k; ++p)
            for (std::size_t q = p; q < k; ++q) {
              double acc = 0.0;
              for (std::size_t i = 0; i < a.rows(); ++i) acc += sub(i, p) * sub(i, q);
              g.set(p, q, acc);
            }
          auto v = eigen(g).vectors.column(0);
          const double lead = v[0];
          for (auto& x : v) x /= lead;
          Circuit c{idx, v, false};
          std::vector<std::pair<long long, long long>> rat;
          for (double x : v) {
            auto r = rationalize(x, 1000000, 1e-9);
            if (!r) break;
            rat.push_back(*r);
          }
          // Common denominator, abandoned once it leaves exact double range.
          long long l = 1;
          for (const auto& [p, q] : rat) {
            const long long step = q / gcd_ll(l, q);
            if (l > (1LL << 52) / step) {
              l = 0;
              break;
            }
            l *= step;
          }
          if (rat.size() == v.size() && l > 0) {
            std::vector<long long> ints;
            long long g2 = 0;
            bool fits = true;
            for (const auto& [p, q] : rat) {
              const long long f = l / q;
              if (p != 0 && std::llabs(p) > (1LL << 52) / f) fits = false;
              ints.push_back(fits ? p * f : 0);
              g2 = gcd_ll(g2, std::llabs(ints.back()));
            }
            if (g2 == 0) g2 = 1;
            // Every float is near some fraction with a large denominator; keep
            // the integer vector only if it is an exact kernel vector.
            for (std::size_t i = 0; fits && i < a.rows(); ++i) {
              double acc = 0.0, scale = 0.0;
              for (std::size_t c2 = 0; c2 < k; ++c2) {
                const double term = sub(i, c2) * static_cast<double>(ints[c2] / g2);
                acc += term;
                scale += std::abs(term);
              }
              if (std::abs(acc) > 1e-12 * scale) fits = false;
            }
            if (fits) {
              for (std::size_t i = 0; i < v.size(); ++i) c.coefficients[i] = static_cast<double>(ints[i] / g2);
              c.integral = true;
            }
          }
          out.push_back(std::move(c));
          found.push_back(mask);
        }
      }
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

SparsePolynomial circuit_polynomial(const Circuit& c, std::size_t m) {
  std::vector<std::string> vars;
  for (std::size_t j = 0; j < m; ++j) vars.push_back("x" + std::to_string(j + 1));
  std::vector<Term> terms;
  for (std::size_t i = 0; i < c.support.size(); ++i) {
    Term t{c.coefficients[i], std::vector<unsigned>(m, 0)};
    for (std::size_t j = 0; j < c.support.size(); ++j)
      if (j != i) t.exps[c.support[j]] = 1;
    terms.push_back(std::move(t));
  }
  return SparsePolynomial(std::move(vars), std::move(terms));
}

std::vector<SparsePolynomial> circuit_generators(const Matrix& a) {
  std::vector<SparsePolynomial> out;
  for (const auto& c : circuits(a)) out.push_back(circuit_polynomial(c, a.cols()));
  return out;
}

std::vector<double> reciprocal_map(const Matrix& a, const std::vector<double>& u) {
  if (u.size() != a.cols()) throw Error(ErrorKind::LengthMismatch, "point length");
  std::vector<double> inv(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (!(u[j] > 0.0)) throw Error(ErrorKind::DomainError, "reciprocal map needs u > 0");
    inv[j] = 1.0 / u[j];
  }
  return a * std::span<const double>(inv);
}

}  // namespace lincon
