#pragma once

// Graph-specific completion theory: chordality and cliques, the clique-minor
// test and closed-form MLE for chordal graphs, separation constraints,
// membership and rank-2 closure for cycles, suspensions, and the symmetric
// MLE of a uniformly colored cycle.

#include <map>
#include <vector>

#include "lincon/cones.hpp"
#include "lincon/graph.hpp"
#include "lincon/model.hpp"

namespace lincon {

// Diagonal plus the entries at (some of) the edges of a graph.
struct PartialMatrix {
  std::size_t m = 0;
  std::vector<double> diagonal;
  std::map<Edge, double> known;

  // Restriction of s to the diagonal and the edges of g.
  static PartialMatrix restrict(const SymMatrix& s, const Graph& g);
  double at(std::size_t i, std::size_t j) const;
  SymMatrix principal(const std::vector<std::size_t>& idx) const;
};

// Statistics of from_graph(g): the diagonal, then twice each edge entry in
// lexicographic edge order. Throws InputError when an edge value is missing.
SuffStats graph_statistics(const Graph& g, const PartialMatrix& t);

struct ChordalityReport {
  bool chordal = false;
  // Perfect elimination ordering when chordal, otherwise the reversed
  // maximum cardinality search order that failed the test.
  std::vector<std::size_t> ordering;
};

ChordalityReport is_chordal(const Graph& g);

// Each clique sorted ascending; list in lexicographic order.
std::vector<std::vector<std::size_t>> maximal_cliques(const Graph& g);

enum class TieBreak { First, Last };

struct CliqueTree {
  std::vector<std::vector<std::size_t>> cliques;
  // Pairs of indices into cliques.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<std::size_t>> separators() const;
};

// Maximum-weight spanning tree of the clique intersection graph (weight
// |C_i cap C_j|); `tie` picks among equal-weight candidate edges. Throws
// NotChordal.
CliqueTree clique_tree(const Graph& g, TieBreak tie = TieBreak::First);

// Every maximal-clique principal submatrix is positive definite. Throws
// NotChordal.
bool gjsw_completable(const Graph& g, const PartialMatrix& t);

// Product of the determinants of the maximal-clique principal submatrices.
double chordal_boundary_eval(const Graph& g, const PartialMatrix& t);

// Closed-form MLE over a clique tree; returns Sigma-hat. Throws NotChordal,
// NotPositiveDefinite.
SymMatrix chordal_mle(const Graph& g, const SymMatrix& s, TieBreak tie = TieBreak::First);

struct SeparationConstraint {
  std::vector<std::size_t> a;
  std::vector<std::size_t> b;
  // Minors of Sigma[a, b] of this size vanish on the model.
  std::size_t size = 0;
};

// Smallest number of vertices meeting every path from a to b; vertices of a
// and b may be used (shared vertices must be).
std::size_t min_vertex_separator(const Graph& g, const std::vector<std::size_t>& a,
                                 const std::vector<std::size_t>& b);

// Pairs of distinct nonempty vertex sets with at most max_set vertices each,
// whose separator size c satisfies c + 1 <= min(|a|, |b|); emits size c + 1.
std::vector<SeparationConstraint> st_constraints(const Graph& g, std::size_t max_set = 5);

// Largest absolute value among the k x k minors of s[rows, cols].
double max_abs_minor(const SymMatrix& s, const std::vector<std::size_t>& rows,
                     const std::vector<std::size_t>& cols, std::size_t k);

struct CycleVerdict {
  Verdict verdict = Verdict::Boundary;
  // Smallest slack over the odd-subset inequalities.
  double value = 0.0;
};

inline constexpr double kAngleEpsilon = 1e-9;

// x_i is the entry on the i-th cycle edge of a unit-diagonal partial matrix.
// Throws OutOfRange when some |x_i| >= 1.
CycleVerdict cycle_angle_membership(const std::vector<double>& x);

// Distance to 2 pi Z of the best signed angle sum; zero iff a unit-diagonal
// completion of rank at most two exists.
double rank2_closure_residual(const std::vector<double>& x);

// New vertex 0 joined to every vertex; old vertex v becomes v + 1.
Graph suspend(const Graph& g);

// S' - b b^T / S*_00 where S* = [[S*_00, b^T], [b, S']].
SymMatrix schur_reduce_sample(const SymMatrix& s_star);

// MLE on the suspension of g via the MLE on g. Throws NoMLE when the base
// model has none.
SymMatrix suspension_mle(const Graph& g, const SymMatrix& s_star);

// Uniformly colored m-cycle with unit diagonal and x on every edge: the fill
// values of Sigma-hat at cycle distances 2 .. floor(m/2). Throws NoMLE.
std::vector<double> circulant_cycle_mle(std::size_t m, double x);

}  // namespace lincon
