#include "lincon/sampling.hpp"

#include <cmath>

#include "lincon/cones.hpp"
#include "lincon/solver.hpp"

namespace lincon {

SymMatrix random_pd(std::size_t m, Rng& rng) {
  Matrix b(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) b(i, j) = rng.normal();
  SymMatrix s(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < m; ++k) acc += b(i, k) * b(j, k);
      s.set(i, j, acc / static_cast<double>(m) + (i == j ? 0.1 : 0.0));
    }
  return s;
}

std::vector<double> random_unit(std::size_t n, Rng& rng) {
  std::vector<double> u(n);
  double norm = 0.0;
  while (norm < 1e-12) {
    for (double& v : u) v = rng.normal();
    norm = norm2(u);
  }
  for (double& v : u) v /= norm;
  return u;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng, double lo, double hi) {
  Matrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = rng.uniform(lo, hi);
  return a;
}

CoeffVector random_interior(const LinearModel& model, Rng& rng) {
  const CoeffVector base = feasible_start(model);
  const std::size_t d = model.dimension();
  const double radius = 0.5 * norm2(base.span()) / std::sqrt(static_cast<double>(d));
  std::vector<double> g(d);
  for (double& v : g) v = rng.normal();
  for (double step = 1.0; step > 1e-6; step *= 0.5) {
    CoeffVector lambda = base;
    for (std::size_t j = 0; j < d; ++j) lambda[j] += step * radius * g[j];
    if (is_positive_definite(model.assemble(lambda))) return lambda;
  }
  return base;
}

Graph random_tree(std::size_t m, Rng& rng) {
  Graph g(m);
  for (std::size_t v = 1; v < m; ++v) {
    const auto parent = static_cast<std::size_t>(rng.uniform() * static_cast<double>(v));
    g.add_edge(std::min(parent, v - 1), v);
  }
  return g;
}

Graph random_triangulated_cycle(std::size_t m, Rng& rng) {
  Graph g = Graph::cycle(m);
  const auto apex = std::min(static_cast<std::size_t>(rng.uniform() * static_cast<double>(m)), m - 1);
  for (std::size_t k = 2; k + 1 < m; ++k) g.add_edge(apex, (apex + k) % m);
  return g;
}

std::vector<SuffStats> boundary_sample(const LinearModel& model, int count, Rng& rng,
                                       const std::optional<SuffStats>& t_in) {
  std::vector<SuffStats> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 20 * count + 20) throw Error(ErrorKind::ConvergenceFailure, "no exterior rays found");
    const SuffStats inside = t_in ? *t_in : model.project(random_pd(model.order(), rng));
    const auto exit = exterior_on_ray(model, inside, random_unit(model.dimension(), rng));
    if (!exit) continue;
    out.push_back(boundary_bisect(model, inside, *exit));
  }
  return out;
}

}  // namespace lincon
