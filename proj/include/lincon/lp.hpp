#pragma once

// Small dense linear programs in standard form, solved by the two-phase
// simplex method with Bland's rule. Sizes here are a few dozen variables.

#include <vector>

#include "lincon/symcore.hpp"

namespace lincon {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> y;
  double value = 0.0;
};

// min c^T y subject to E y = f, y >= 0.
LpResult solve_lp(const std::vector<double>& c, const Matrix& e, const std::vector<double>& f);

}  // namespace lincon
