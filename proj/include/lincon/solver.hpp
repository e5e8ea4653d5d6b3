#pragma once

// Maximum likelihood estimation over K_L by damped Newton, and a barrier
// method for linear objectives over the slice {K in K_L : trace K = 1}.

#include <optional>
#include <vector>

#include "lincon/model.hpp"

namespace lincon {

enum class SolveStatus { Converged, Diverged, MaxIterations };
const char* to_string(SolveStatus s);

struct SolveReport {
  SolveStatus status = SolveStatus::MaxIterations;
  CoeffVector lambda;
  SymMatrix K{1};
  SymMatrix Sigma{1};
  // max_j |<Sigma, K_j> - t_j| / (1 + |t_j|)
  double stationarity = 0.0;
  int iterations = 0;
  double objective = 0.0;
  // Objective after each accepted step, starting with the initial point.
  std::vector<double> objective_history;
};

struct MleOptions {
  int max_iterations = 500;
  double tolerance = 1e-9;
  double divergence_norm = 1e8;
  double divergence_objective = 1e12;
  std::optional<CoeffVector> start;
};

// f(lambda) = logdet K(lambda) - <t, lambda>.
double log_likelihood(const LinearModel& model, const SuffStats& t, const CoeffVector& lambda);
// Gradient and Hessian of f at a positive definite point.
std::vector<double> log_likelihood_gradient(const LinearModel& model, const SuffStats& t,
                                            const CoeffVector& lambda);
SymMatrix log_likelihood_hessian(const LinearModel& model, const CoeffVector& lambda);

// A coefficient vector whose matrix is positive definite: the projection of
// the identity onto L, repaired by subgradient ascent on the smallest
// eigenvalue when needed. Throws NoPDPoint.
CoeffVector feasible_start(const LinearModel& model);

// Throws NoPDPoint and LengthMismatch; hitting the iteration cap is reported
// through the status.
SolveReport mle(const LinearModel& model, const SuffStats& t, const MleOptions& options = {});

struct BarrierReport {
  double value = 0.0;
  CoeffVector lambda;
  SymMatrix K{1};
  double mu = 0.0;
};

struct BarrierOptions {
  double mu_start = 1.0;
  double mu_final = 1e-9;
  double mu_factor = 0.5;
  int max_inner_iterations = 100;
};

// min <c, lambda> over K(lambda) positive definite with trace 1, as the limit
// of the barrier path. Throws NoPDPoint, MaxIterations.
BarrierReport linear_min_over_base(const LinearModel& model, const SuffStats& c,
                                   const BarrierOptions& options = {});

}  // namespace lincon
