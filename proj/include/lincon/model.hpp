#pragma once

// Linear concentration models: a subspace L of symmetric matrices given by an
// ordered basis K_1..K_d, with assembly (coefficients -> K) and projection
// (sample covariance -> sufficient statistics).

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "lincon/graph.hpp"
#include "lincon/symcore.hpp"

namespace lincon {

// Real vector tagged with what its coordinates mean, so statistics and
// coefficients cannot be swapped by accident.
template <class Tag>
class TaggedVector {
 public:
  TaggedVector() = default;
  explicit TaggedVector(std::size_t n, double fill = 0.0) : v_(n, fill) {}
  explicit TaggedVector(std::vector<double> v) : v_(std::move(v)) {}
  TaggedVector(std::initializer_list<double> v) : v_(v) {}

  std::size_t size() const noexcept { return v_.size(); }
  double& operator[](std::size_t i) { return v_[i]; }
  double operator[](std::size_t i) const { return v_[i]; }
  std::span<const double> span() const noexcept { return v_; }
  const std::vector<double>& values() const noexcept { return v_; }
  std::vector<double>& values() noexcept { return v_; }

  friend bool operator==(const TaggedVector&, const TaggedVector&) = default;

 private:
  std::vector<double> v_;
};

using SuffStats = TaggedVector<struct SuffStatsTag>;
using CoeffVector = TaggedVector<struct CoeffVectorTag>;

struct Triplet {
  std::size_t i;
  std::size_t j;
  double value;
};

// Sparse symmetric basis matrix: each triplet (i <= j) places value at (i, j)
// and (j, i).
class BasisMatrix {
 public:
  BasisMatrix(std::size_t order, std::vector<Triplet> triplets);

  static BasisMatrix from_dense(const SymMatrix& m);

  std::size_t order() const noexcept { return order_; }
  const std::vector<Triplet>& triplets() const noexcept { return triplets_; }

  SymMatrix densify() const;
  // <S, B> without densifying.
  double pair(const SymMatrix& s) const;
  // Adds scale * B into out.
  void accumulate(double scale, SymMatrix& out) const;

 private:
  std::size_t order_;
  std::vector<Triplet> triplets_;
};

class LinearModel {
 public:
  // Throws RankDeficient if the basis Gram matrix is numerically singular.
  LinearModel(std::size_t order, std::vector<BasisMatrix> basis);

  std::size_t order() const noexcept { return order_; }
  std::size_t dimension() const noexcept { return basis_.size(); }
  const std::vector<BasisMatrix>& basis() const noexcept { return basis_; }
  const BasisMatrix& basis(std::size_t j) const { return basis_[j]; }

  // G[a][b] = <K_a, K_b>.
  const SymMatrix& gram() const noexcept { return gram_; }

  SymMatrix assemble(const CoeffVector& lambda) const;
  SuffStats project(const SymMatrix& s) const;

  // trace(K_j) for every j; the linear functional lambda -> trace(K(lambda)).
  std::vector<double> traces() const;

 private:
  std::size_t order_;
  std::vector<BasisMatrix> basis_;
  SymMatrix gram_;
};

// Relative threshold on the Gram spectrum used for linear independence.
inline constexpr double kGramTolerance = 1e-10;

// Vertices first (ascending), then edges in lexicographic order.
LinearModel from_graph(const Graph& g);
// Vertex classes then edge classes, each in input order.
LinearModel from_colored(const ColoredGraph& cg);
// Basis matrix j is diag(row j of a). Throws RankDeficient.
LinearModel from_diagonal(const Matrix& a);
// Entries uniform on [-1, 1] from an Rng seeded by `seed`; basis
// matrix 0 is the identity.
LinearModel generic_random(std::size_t m, std::size_t d, std::uint64_t seed);

// The full space S^m with the graph basis of the complete graph.
LinearModel full_model(std::size_t m);

// Coordinates of the identity in the model: Gram^{-1} project(I).
CoeffVector identity_projection(const LinearModel& model);

}  // namespace lincon
