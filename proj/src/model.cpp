#include "lincon/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "lincon/random.hpp"

namespace lincon {

BasisMatrix::BasisMatrix(std::size_t order, std::vector<Triplet> triplets)
    : order_(order), triplets_(std::move(triplets)) {
  std::map<std::pair<std::size_t, std::size_t>, bool> seen;
  for (auto& t : triplets_) {
    if (t.i > t.j) std::swap(t.i, t.j);
    if (t.j >= order_) throw Error(ErrorKind::OutOfRange, "basis triplet index");
    if (t.value == 0.0 || !std::isfinite(t.value))
      throw Error(ErrorKind::InputError, "basis triplet value must be finite and nonzero");
    if (seen[{t.i, t.j}]) throw Error(ErrorKind::InputError, "duplicate basis triplet");
    seen[{t.i, t.j}] = true;
  }
  std::sort(triplets_.begin(), triplets_.end(),
            [](const Triplet& a, const Triplet& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
}

BasisMatrix BasisMatrix::from_dense(const SymMatrix& m) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = i; j < m.order(); ++j)
      if (m(i, j) != 0.0) t.push_back({i, j, m(i, j)});
  return BasisMatrix(m.order(), std::move(t));
}

SymMatrix BasisMatrix::densify() const {
  SymMatrix out(order_);
  accumulate(1.0, out);
  return out;
}

double BasisMatrix::pair(const SymMatrix& s) const {
  if (s.order() != order_) throw Error(ErrorKind::OrderMismatch, "basis pairing");
  double acc = 0.0;
  for (const auto& t : triplets_) acc += (t.i == t.j ? 1.0 : 2.0) * t.value * s(t.i, t.j);
  return acc;
}

void BasisMatrix::accumulate(double scale, SymMatrix& out) const {
  for (const auto& t : triplets_) out.add(t.i, t.j, scale * t.value);
}

namespace {

SymMatrix gram_of(const std::vector<BasisMatrix>& basis) {
  const std::size_t d = basis.size();
  SymMatrix g(d);
  std::vector<SymMatrix> dense;
  dense.reserve(d);
  for (const auto& b : basis) dense.push_back(b.densify());
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a; b < d; ++b) g.set(a, b, basis[b].pair(dense[a]));
  return g;
}

}  // namespace

LinearModel::LinearModel(std::size_t order, std::vector<BasisMatrix> basis)
    : order_(order), basis_(std::move(basis)), gram_(std::max<std::size_t>(basis_.size(), 1)) {
  const std::size_t d = basis_.size();
  if (d == 0) throw Error(ErrorKind::RankDeficient, "model with empty basis");
  if (d > order * (order + 1) / 2) throw Error(ErrorKind::RankDeficient, "more basis matrices than dim S^m");
  for (const auto& b : basis_)
    if (b.order() != order) throw Error(ErrorKind::OrderMismatch, "basis matrix order");
  gram_ = gram_of(basis_);
  const auto ev = spectrum(gram_);
  if (!(ev.front() > kGramTolerance * ev.back()))
    throw Error(ErrorKind::RankDeficient, "basis matrices are linearly dependent");
}

SymMatrix LinearModel::assemble(const CoeffVector& lambda) const {
  if (lambda.size() != dimension()) throw Error(ErrorKind::LengthMismatch, "coefficient vector length");
  SymMatrix k(order_);
  for (std::size_t j = 0; j < basis_.size(); ++j)
    if (lambda[j] != 0.0) basis_[j].accumulate(lambda[j], k);
  return k;
}

SuffStats LinearModel::project(const SymMatrix& s) const {
  if (s.order() != order_) throw Error(ErrorKind::OrderMismatch, "projection of a matrix of wrong order");
  SuffStats t(dimension());
  for (std::size_t j = 0; j < basis_.size(); ++j) t[j] = basis_[j].pair(s);
  return t;
}

std::vector<double> LinearModel::traces() const {
  std::vector<double> out(dimension(), 0.0);
  for (std::size_t j = 0; j < basis_.size(); ++j)
    for (const auto& t : basis_[j].triplets())
      if (t.i == t.j) out[j] += t.value;
  return out;
}

LinearModel from_graph(const Graph& g) {
  std::vector<BasisMatrix> basis;
  for (std::size_t v = 0; v < g.order(); ++v) basis.emplace_back(g.order(), std::vector<Triplet>{{v, v, 1.0}});
  for (const auto& [i, j] : g.edges()) basis.emplace_back(g.order(), std::vector<Triplet>{{i, j, 1.0}});
  return LinearModel(g.order(), std::move(basis));
}

LinearModel from_colored(const ColoredGraph& cg) {
  cg.validate();
  std::vector<BasisMatrix> basis;
  for (const auto& cls : cg.vertex_classes) {
    std::vector<Triplet> t;
    for (std::size_t v : cls) t.push_back({v, v, 1.0});
    basis.emplace_back(cg.order, std::move(t));
  }
  for (const auto& cls : cg.edge_classes) {
    std::vector<Triplet> t;
    for (const auto& [i, j] : cls) t.push_back({i, j, 1.0});
    basis.emplace_back(cg.order, std::move(t));
  }
  return LinearModel(cg.order, std::move(basis));
}

LinearModel from_diagonal(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) throw Error(ErrorKind::RankDeficient, "empty diagonal model matrix");
  std::vector<BasisMatrix> basis;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::vector<Triplet> t;
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (a(r, c) != 0.0) t.push_back({c, c, a(r, c)});
    if (t.empty()) throw Error(ErrorKind::RankDeficient, "zero row in diagonal model matrix");
    basis.emplace_back(a.cols(), std::move(t));
  }
  return LinearModel(a.cols(), std::move(basis));
}

LinearModel generic_random(std::size_t m, std::size_t d, std::uint64_t seed) {
  if (m == 0 || d == 0 || d > m * (m + 1) / 2)
    throw Error(ErrorKind::OutOfRange, "generic_random needs 1 <= d <= m(m+1)/2");
  Rng rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<BasisMatrix> basis;
    basis.push_back(BasisMatrix::from_dense(SymMatrix::identity(m)));
    for (std::size_t k = 1; k < d; ++k) {
      std::vector<Triplet> t;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
          const double v = rng.uniform(-1.0, 1.0);
          if (v != 0.0) t.push_back({i, j, v});
        }
      basis.emplace_back(m, std::move(t));
    }
    try {
      return LinearModel(m, std::move(basis));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::RankDeficient) throw;
    }
  }
  throw Error(ErrorKind::RankDeficient, "generic_random could not draw an independent basis");
}

LinearModel full_model(std::size_t m) { return from_graph(Graph::complete(m)); }

CoeffVector identity_projection(const LinearModel& model) {
  const SuffStats t = model.project(SymMatrix::identity(model.order()));
  return CoeffVector(cholesky(model.gram()).solve(t.span()));
}

}  // namespace lincon
