#include "lincon/lp.hpp"

#include <algorithm>
#include <cmath>

namespace lincon {

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-11;

struct Tableau {
  std::size_t rows;
  std::size_t cols;  // variable columns; the right-hand side is column `cols`
  std::vector<std::vector<double>> t;
  std::vector<std::size_t> basis;

  void pivot(std::size_t r, std::size_t c) {
    const double p = t[r][c];
    for (double& v : t[r]) v /= p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const double f = t[i][c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
      t[i][c] = 0.0;
    }
    basis[r] = c;
  }

  // Minimizes cost^T y over the columns allowed by `usable`. Returns false
  // when unbounded.
  bool optimize(const std::vector<double>& cost, const std::vector<bool>& usable) {
    for (int guard = 0; guard < 100000; ++guard) {
      // Reduced costs.
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols && enter == cols; ++j) {
        if (!usable[j]) continue;
        if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
        double rc = cost[j];
        for (std::size_t i = 0; i < rows; ++i) rc -= cost[basis[i]] * t[i][j];
        if (rc < -kCostEps) enter = j;
      }
      if (enter == cols) return true;
      std::size_t leave = rows;
      double best = 0.0;
      for (std::size_t i = 0; i < rows; ++i) {
        if (t[i][enter] <= kPivotEps) continue;
        const double ratio = t[i][cols] / t[i][enter];
        if (leave == rows || ratio < best - 1e-14 ||
            (std::abs(ratio - best) <= 1e-14 && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows) return false;
      pivot(leave, enter);
    }
    return true;
  }
};

}  // namespace

LpResult solve_lp(const std::vector<double>& c, const Matrix& e, const std::vector<double>& f) {
  const std::size_t m = e.rows();
  const std::size_t n = e.cols();
  if (c.size() != n || f.size() != m) throw Error(ErrorKind::LengthMismatch, "linear program shapes");

  double scale = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    scale = std::max(scale, std::abs(f[i]));
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(e(i, j)));
  }
  if (scale == 0.0) scale = 1.0;

  Tableau tab{m, n + m, std::vector<std::vector<double>>(m, std::vector<double>(n + m + 1, 0.0)),
              std::vector<std::size_t>(m)};
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = f[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) tab.t[i][j] = sign * e(i, j) / scale;
    tab.t[i][n + i] = 1.0;
    tab.t[i][n + m] = sign * f[i] / scale;
    tab.basis[i] = n + i;
  }

  // Phase 1: drive the artificial variables to zero.
  std::vector<double> phase1(n + m, 0.0);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = 1.0;
  tab.optimize(phase1, std::vector<bool>(n + m, true));
  double infeas = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basis[i] >= n) infeas += tab.t[i][n + m];
  LpResult res;
  if (infeas > 1e-9) return res;

  // Pivot remaining (zero-valued) artificials out; drop rows that are
  // redundant.
  for (std::size_t i = 0; i < tab.rows;) {
    if (tab.basis[i] < n) {
      ++i;
      continue;
    }
    std::size_t col = n;
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(tab.t[i][j]) > 1e-9) {
        col = j;
        break;
      }
    if (col < n) {
      tab.pivot(i, col);
      ++i;
    } else {
      tab.t.erase(tab.t.begin() + static_cast<long>(i));
      tab.basis.erase(tab.basis.begin() + static_cast<long>(i));
      --tab.rows;
    }
  }

  std::vector<double> cost(n + m, 0.0);
  std::copy(c.begin(), c.end(), cost.begin());
  std::vector<bool> usable(n + m, false);
  std::fill(usable.begin(), usable.begin() + static_cast<long>(n), true);
  if (!tab.optimize(cost, usable)) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  res.status = LpStatus::Optimal;
  res.y.assign(n, 0.0);
  for (std::size_t i = 0; i < tab.rows; ++i)
    if (tab.basis[i] < n) res.y[tab.basis[i]] = std::max(0.0, tab.t[i][n + m]);
  for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.y[j];
  return res;
}

}  // namespace lincon
