#include "lincon/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lincon {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::Diverged: return "Diverged";
    case SolveStatus::MaxIterations: return "MaxIterations";
  }
  return "Unknown";
}

namespace {

// Basis matrix j written as sum_t a_t (e_i e_j^T + e_j e_i^T); diagonal
// triplets get half their value so the same pairing formula covers both.
struct HalfTerm {
  std::size_t i;
  std::size_t j;
  double a;
};

std::vector<std::vector<HalfTerm>> half_terms(const LinearModel& model) {
  std::vector<std::vector<HalfTerm>> out(model.dimension());
  for (std::size_t k = 0; k < model.dimension(); ++k)
    for (const auto& t : model.basis(k).triplets())
      out[k].push_back({t.i, t.j, t.i == t.j ? 0.5 * t.value : t.value});
  return out;
}

// N[j][k] = <P K_j P, K_k> for P = K^{-1}; this is minus the Hessian of logdet.
SymMatrix information_matrix(const std::vector<std::vector<HalfTerm>>& terms, const SymMatrix& p) {
  const std::size_t d = terms.size();
  SymMatrix n(d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j; k < d; ++k) {
      double acc = 0.0;
      for (const auto& x : terms[j])
        for (const auto& y : terms[k])
          acc += x.a * y.a * (p(x.i, y.j) * p(x.j, y.i) + p(x.i, y.i) * p(x.j, y.j));
      n.set(j, k, 2.0 * acc);
    }
  return n;
}

std::vector<double> pairings(const LinearModel& model, const SymMatrix& p) {
  std::vector<double> out(model.dimension());
  for (std::size_t j = 0; j < model.dimension(); ++j) out[j] = model.basis(j).pair(p);
  return out;
}

// Solves n x = b for a symmetric positive definite n, falling back to
// pivoted elimination when n is too ill-conditioned for Cholesky.
std::vector<double> spd_solve(const SymMatrix& n, std::span<const double> b) {
  if (auto c = try_cholesky(n)) return c->solve(b);
  // Numerically singular near the boundary of the cone: add a growing ridge.
  const double scale = std::max(n.max_abs(), 1e-300);
  for (double ridge = 1e-14; ridge < 1.0; ridge *= 10.0) {
    SymMatrix shifted = n;
    for (std::size_t i = 0; i < n.order(); ++i) shifted.add(i, i, ridge * scale);
    if (auto c = try_cholesky(shifted)) return c->solve(b);
  }
  return solve_linear(n.to_matrix(), {b.begin(), b.end()});
}

double lambda_norm(const CoeffVector& l) { return norm2(l.span()); }

CoeffVector axpy(const CoeffVector& x, double alpha, std::span<const double> dir) {
  CoeffVector out = x;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += alpha * dir[j];
  return out;
}

}  // namespace

double log_likelihood(const LinearModel& model, const SuffStats& t, const CoeffVector& lambda) {
  if (t.size() != model.dimension()) throw Error(ErrorKind::LengthMismatch, "statistic length");
  return logdet(model.assemble(lambda)) - dot(t.span(), lambda.span());
}

std::vector<double> log_likelihood_gradient(const LinearModel& model, const SuffStats& t,
                                            const CoeffVector& lambda) {
  if (t.size() != model.dimension()) throw Error(ErrorKind::LengthMismatch, "statistic length");
  auto g = pairings(model, inverse(model.assemble(lambda)));
  for (std::size_t j = 0; j < g.size(); ++j) g[j] -= t[j];
  return g;
}

SymMatrix log_likelihood_hessian(const LinearModel& model, const CoeffVector& lambda) {
  SymMatrix n = information_matrix(half_terms(model), inverse(model.assemble(lambda)));
  n *= -1.0;
  return n;
}

CoeffVector feasible_start(const LinearModel& model) {
  CoeffVector lambda = identity_projection(model);
  if (is_positive_definite(model.assemble(lambda))) return lambda;
  const std::size_t d = model.dimension();
  double scale = lambda_norm(lambda);
  if (scale == 0.0) {
    lambda = CoeffVector(d, 0.0);
    lambda[0] = 1.0;
  } else {
    for (auto& v : lambda.values()) v /= scale;
  }
  for (int it = 0; it < 200; ++it) {
    const SymMatrix k = model.assemble(lambda);
    const auto ed = eigen(k);
    if (ed.values.front() > 0.0 && is_positive_definite(k)) return lambda;
    const auto v = ed.vectors.column(0);
    std::vector<double> g(d);
    for (std::size_t j = 0; j < d; ++j) {
      double acc = 0.0;
      for (const auto& t : model.basis(j).triplets())
        acc += (t.i == t.j ? 1.0 : 2.0) * t.value * v[t.i] * v[t.j];
      g[j] = acc;
    }
    const double gn = norm2(g);
    if (gn == 0.0) break;
    const double step = 1.0 / std::sqrt(1.0 + it);
    for (std::size_t j = 0; j < d; ++j) lambda[j] += step * g[j] / gn;
    scale = lambda_norm(lambda);
    if (!(scale > 0.0)) break;
    for (auto& x : lambda.values()) x /= scale;
  }
  throw Error(ErrorKind::NoPDPoint, "no positive definite matrix found in the model");
}

SolveReport mle(const LinearModel& model, const SuffStats& t, const MleOptions& options) {
  const std::size_t d = model.dimension();
  if (t.size() != d) throw Error(ErrorKind::LengthMismatch, "statistic length");
  const auto terms = half_terms(model);

  CoeffVector lambda = options.start ? *options.start : feasible_start(model);
  if (lambda.size() != d) throw Error(ErrorKind::LengthMismatch, "start vector length");
  auto chol = try_cholesky(model.assemble(lambda));
  if (!chol) {
    if (options.start) throw Error(ErrorKind::NoPDPoint, "start point is not positive definite");
    throw Error(ErrorKind::NoPDPoint, "no positive definite start");
  }
  double f = chol->logdet() - dot(t.span(), lambda.span());

  SolveReport rep;
  rep.objective_history.push_back(f);
  for (int iter = 0;; ++iter) {
    const SymMatrix p = chol->inverse();
    auto g = pairings(model, p);
    double stat = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      g[j] -= t[j];
      stat = std::max(stat, std::abs(g[j]) / (1.0 + std::abs(t[j])));
    }
    rep.lambda = lambda;
    rep.K = model.assemble(lambda);
    rep.Sigma = p;
    rep.stationarity = stat;
    rep.iterations = iter;
    rep.objective = f;
    if (stat <= options.tolerance) {
      rep.status = SolveStatus::Converged;
      return rep;
    }
    if (lambda_norm(lambda) > options.divergence_norm || f > options.divergence_objective) {
      rep.status = SolveStatus::Diverged;
      return rep;
    }
    if (iter >= options.max_iterations) {
      rep.status = SolveStatus::MaxIterations;
      return rep;
    }

    const auto dir = spd_solve(information_matrix(terms, p), g);
    const double slope = dot(g, dir);

    bool accepted = false;
    double alpha = 1.0;
    std::optional<std::pair<CoeffVector, CholeskyFactor>> full_step;
    for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
      CoeffVector trial = axpy(lambda, alpha, dir);
      auto tc = try_cholesky(model.assemble(trial));
      if (!tc) continue;
      const double ft = tc->logdet() - dot(t.span(), trial.span());
      if (ls == 0) full_step.emplace(trial, *tc);
      if (ft >= f + 1e-4 * alpha * slope && ft > f) {
        lambda = std::move(trial);
        chol = std::move(tc);
        f = ft;
        rep.objective_history.push_back(f);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // Close to the optimum the predicted increase drops below rounding in
      // f; the undamped step is then the right move.
      if (full_step && slope <= 1e-10 * (1.0 + std::abs(f))) {
        lambda = full_step->first;
        chol = full_step->second;
        f = chol->logdet() - dot(t.span(), lambda.span());
      } else {
        rep.status = SolveStatus::MaxIterations;
        return rep;
      }
    }
  }
}

BarrierReport linear_min_over_base(const LinearModel& model, const SuffStats& c,
                                   const BarrierOptions& options) {
  const std::size_t d = model.dimension();
  if (c.size() != d) throw Error(ErrorKind::LengthMismatch, "objective length");
  const auto a = model.traces();
  const double an = norm2(a);
  if (an == 0.0) throw Error(ErrorKind::NoPDPoint, "trace vanishes on the model");

  CoeffVector lambda = feasible_start(model);
  const double tr0 = dot(a, lambda.span());
  if (!(tr0 > 0.0)) throw Error(ErrorKind::NoPDPoint, "non-positive trace at a positive definite point");
  for (auto& v : lambda.values()) v /= tr0;

  // Orthonormal basis of the hyperplane a^perp: eigenvectors of I - a a^T/|a|^2
  // for eigenvalue 1.
  SymMatrix proj = SymMatrix::identity(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) proj.add(i, j, -a[i] * a[j] / (an * an));
  const auto ed = eigen(proj);
  const std::size_t r = d - 1;
  Matrix z(d, r);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < d; ++i) z(i, k) = ed.vectors(i, k + 1);

  const auto terms = half_terms(model);
  BarrierReport rep;
  double mu = options.mu_start;
  auto chol = try_cholesky(model.assemble(lambda));
  if (!chol) throw Error(ErrorKind::NoPDPoint, "start point is not positive definite");

  auto psi = [&](double m, const CoeffVector& l, const CholeskyFactor& cf) {
    return dot(c.span(), l.span()) / m - cf.logdet();
  };

  while (r > 0) {
    double prev_dec = std::numeric_limits<double>::infinity();
    bool centered = false;
    for (int it = 0; it < options.max_inner_iterations; ++it) {
      const SymMatrix p = chol->inverse();
      const auto q = pairings(model, p);
      std::vector<double> g(d);
      for (std::size_t j = 0; j < d; ++j) g[j] = c[j] / mu - q[j];
      const SymMatrix n = information_matrix(terms, p);
      // Reduced gradient and Hessian.
      std::vector<double> gr(r, 0.0);
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t j = 0; j < d; ++j) gr[k] += z(j, k) * g[j];
      Matrix nz(d, r);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < r; ++k) {
          double acc = 0.0;
          for (std::size_t j = 0; j < d; ++j) acc += n(i, j) * z(j, k);
          nz(i, k) = acc;
        }
      SymMatrix hr(r);
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t l = k; l < r; ++l) {
          double acc = 0.0;
          for (std::size_t i = 0; i < d; ++i) acc += z(i, k) * nz(i, l);
          hr.set(k, l, acc);
        }
      const auto dy = spd_solve(hr, gr);
      const double dec2 = dot(gr, dy);
      if (dec2 <= 1e-10) {
        centered = true;
        break;
      }
      if (dec2 <= 1e-6 && dec2 > 0.25 * prev_dec) {
        // Stalled at the rounding floor; the iterate is as centered as it gets.
        centered = true;
        break;
      }
      prev_dec = dec2;
      std::vector<double> dl(d, 0.0);
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < r; ++k) dl[j] -= z(j, k) * dy[k];

      const double f0 = psi(mu, lambda, *chol);
      bool moved = false;
      const bool quadratic = dec2 < 0.04;
      double alpha = quadratic ? 1.0 : 1.0 / (1.0 + std::sqrt(dec2));
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        CoeffVector trial = axpy(lambda, alpha, dl);
        auto tc = try_cholesky(model.assemble(trial));
        if (!tc) continue;
        if (quadratic || psi(mu, trial, *tc) <= f0 - 1e-4 * alpha * dec2) {
          lambda = std::move(trial);
          chol = std::move(tc);
          moved = true;
          break;
        }
      }
      if (!moved) {
        if (dec2 <= 1e-6) {
          centered = true;
          break;
        }
        throw Error(ErrorKind::MaxIterations, "barrier line search failed");
      }
    }
    if (!centered) throw Error(ErrorKind::MaxIterations, "barrier centering did not converge");
    if (mu <= options.mu_final) break;
    mu = std::max(mu * options.mu_factor, options.mu_final);
  }

  rep.lambda = lambda;
  rep.K = model.assemble(lambda);
  rep.value = dot(c.span(), lambda.span());
  rep.mu = mu;
  return rep;
}

}  // namespace lincon
