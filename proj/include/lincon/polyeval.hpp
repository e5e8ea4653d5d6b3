#pragma once

// Sparse multivariate polynomials over named variables: a small text
// grammar, compensated evaluation, and the scale-free residual used to decide
// whether a polynomial vanishes at a floating-point point.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lincon/symcore.hpp"

namespace lincon {

struct Term {
  double coeff = 0.0;
  std::vector<unsigned> exps;
};

class SparsePolynomial {
 public:
  SparsePolynomial() = default;
  // Merges equal exponent vectors, drops zero coefficients and sorts terms
  // graded-lexicographically (highest first).
  SparsePolynomial(std::vector<std::string> vars, std::vector<Term> terms);

  // Grammar: [sign] term {(+|-) term}, term = factor {* factor},
  // factor = number | name [^ integer]. With `vars` given, names outside it
  // are rejected; otherwise variables are ordered by first appearance.
  // Throws SyntaxError carrying the offending position.
  static SparsePolynomial parse(std::string_view text,
                                const std::optional<std::vector<std::string>>& vars = std::nullopt);

  const std::vector<std::string>& vars() const noexcept { return vars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  unsigned total_degree() const;

  // Throws LengthMismatch.
  double eval(std::span<const double> point) const;
  // |P(x)| / (sum_k |c_k x^a_k| + 1e-300).
  double scaled_residual(std::span<const double> point) const;
  std::vector<double> gradient(std::span<const double> point) const;
  // |P(x)| / |grad P(x)|: first-order distance from x to the zero set.
  double distance_estimate(std::span<const double> point) const;
  double coefficient_sum() const;

  std::string to_string() const;

 private:
  std::vector<std::string> vars_;
  std::vector<Term> terms_;
};

// A named polynomial file: a single polynomial, a product of factors
// (kept factored), or a list of polynomials that should all vanish.
enum class PolyKind { Single, Product, List };

struct PolyFamily {
  std::string name;
  PolyKind kind = PolyKind::Single;
  std::vector<std::string> vars;
  std::vector<SparsePolynomial> parts;

  // Single: the value; Product: the product of the factor values; List: the
  // entry of largest magnitude.
  double eval(std::span<const double> point) const;
  // Product: product of factor residuals (the residual of the expanded
  // product is not formed); List: the largest part residual.
  double scaled_residual(std::span<const double> point) const;
  unsigned total_degree() const;
};

// File format: '#' comments, a "vars:" line, an optional "kind:" line, then
// polynomial text; parts are separated by lines holding "---".
PolyFamily parse_poly_file(std::string_view text, const std::string& name = "");
PolyFamily load_poly_file(const std::filesystem::path& path);

// Location of the checked-in data files: $LINCON_FIXTURES when set, else the
// source tree's fixtures directory.
std::filesystem::path default_fixture_root();
PolyFamily builtin_polynomial(const std::string& name, const std::filesystem::path& root = default_fixture_root());

// Evaluates a polynomial in normalized entries x_k = s_ij / sqrt(s_ii s_jj),
// where variable k reads position pairs[k] of a symmetric matrix.
class NormalizedEvaluator {
 public:
  NormalizedEvaluator(PolyFamily poly, std::vector<std::pair<std::size_t, std::size_t>> pairs);

  // Throws DomainError on a nonpositive diagonal entry.
  std::vector<double> normalize(const SymMatrix& s) const;
  double eval(const SymMatrix& s) const;
  double scaled_residual(const SymMatrix& s) const;

 private:
  PolyFamily poly_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

}  // namespace lincon
