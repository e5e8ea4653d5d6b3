#pragma once

// The cone C_L of sufficient statistics: membership (MLE existence), ray
// bisection to its boundary, the duality map, and ranks at extreme points of
// the trace-one slice of the dual cone.

#include <cstdint>
#include <map>
#include <optional>
#include <span>

#include "lincon/solver.hpp"

namespace lincon {

enum class Verdict { Inside, Boundary, Outside };
const char* to_string(Verdict v);

inline constexpr double kMembershipEpsilon = 1e-7;
inline constexpr double kRankThreshold = 1e-6;

struct MembershipVerdict {
  Verdict verdict = Verdict::Boundary;
  // min <t/|t|, lambda> over the trace-one slice.
  double value = 0.0;
  CoeffVector lambda;
};

MembershipVerdict membership(const LinearModel& model, const SuffStats& t);

// Bisects the segment from an interior to an exterior statistic until its
// width is at most 1e-9 |t_inside|. Throws InvalidBracket.
SuffStats boundary_bisect(const LinearModel& model, const SuffStats& t_inside, const SuffStats& t_outside);

// First point t_in + s |t_in| u / |u|, s = 1, 2, 4, ..., that is Outside;
// empty when 60 doublings stay in the closed cone.
std::optional<SuffStats> exterior_on_ray(const LinearModel& model, const SuffStats& t_in,
                                         std::span<const double> u);

// project(K(lambda)^{-1}). Throws NotPositiveDefinite.
SuffStats dual_map(const LinearModel& model, const CoeffVector& lambda);

// Number of eigenvalues above kRankThreshold times the largest.
int numerical_rank(const SymMatrix& k, double threshold = kRankThreshold);

// Ranks of the minimizers of `count` random linear functionals over the
// trace-one slice; directions are standard Gaussian, normalized.
std::map<int, int> extreme_rank_sample(const LinearModel& model, int count, std::uint64_t seed);

// Ranks r = p - 1 for which a generic (m, d) model can have rank-r extreme
// points: C(m-p+2, 2) <= d - 1 and C(p, 2) <= C(m+1, 2) - d + 1.
std::vector<int> pataki_ranks(std::size_t m, std::size_t d);

}  // namespace lincon
