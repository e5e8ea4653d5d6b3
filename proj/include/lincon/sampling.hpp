#pragma once

// Random instances shared by the reproduction cases and the test suites.

#include <cstddef>
#include <optional>
#include <vector>

#include "lincon/graph.hpp"
#include "lincon/model.hpp"
#include "lincon/random.hpp"
#include "lincon/symcore.hpp"

namespace lincon {

// B B^T / m + I / 10 with B standard Gaussian.
SymMatrix random_pd(std::size_t m, Rng& rng);

// Uniform on the unit sphere of R^n.
std::vector<double> random_unit(std::size_t n, Rng& rng);

// Entries uniform on [lo, hi].
Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng, double lo = -1.0, double hi = 1.0);

// A Gaussian perturbation of feasible_start(model) whose matrix is positive
// definite.
CoeffVector random_interior(const LinearModel& model, Rng& rng);

// Each vertex v > 0 attached to a uniform earlier vertex.
Graph random_tree(std::size_t m, Rng& rng);

// The m-cycle with the chords of a fan from a random apex.
Graph random_triangulated_cycle(std::size_t m, Rng& rng);

// `count` boundary points of C_L, each bisected between an interior point
// (t_in, or project(S) for a random positive definite S) and the first
// exterior point on a random ray from it.
std::vector<SuffStats> boundary_sample(const LinearModel& model, int count, Rng& rng,
                                       const std::optional<SuffStats>& t_in = std::nullopt);

}  // namespace lincon
