#include "lincon/polyeval.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace lincon {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double monomial(std::span<const double> x, const std::vector<unsigned>& e) {
  double v = 1.0;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (unsigned k = 0; k < e[i]; ++k) v *= x[i];
  return v;
}

unsigned degree_of(const std::vector<unsigned>& e) {
  unsigned d = 0;
  for (unsigned v : e) d += v;
  return d;
}

class Parser {
 public:
  Parser(std::string_view text, const std::optional<std::vector<std::string>>& vars)
      : s_(text), fixed_(vars.has_value()) {
    if (vars) vars_ = *vars;
  }

  SparsePolynomial run() {
    std::vector<Term> terms;
    skip();
    if (pos_ >= s_.size()) throw SyntaxError(pos_, "empty polynomial");
    bool first = true;
    while (pos_ < s_.size()) {
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
        skip();
      } else if (!first) {
        throw SyntaxError(pos_, "expected '+' or '-'");
      }
      Term t = term();
      t.coeff *= sign;
      terms.push_back(std::move(t));
      first = false;
      skip();
    }
    for (auto& t : terms) t.exps.resize(vars_.size(), 0);
    return SparsePolynomial(vars_, std::move(terms));
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  Term term() {
    Term t;
    t.coeff = 1.0;
    t.exps.assign(vars_.size(), 0);
    factor(t);
    skip();
    while (peek() == '*') {
      ++pos_;
      skip();
      factor(t);
      skip();
    }
    return t;
  }

  void factor(Term& t) {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      // Exponent part, only when digits follow.
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
        std::size_t q = pos_ + 1;
        if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
        if (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) {
          pos_ = q;
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
      }
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
      if (ec != std::errc() || ptr != s_.data() + pos_) throw SyntaxError(start, "malformed number");
      t.coeff *= v;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      auto it = std::find(vars_.begin(), vars_.end(), name);
      std::size_t idx;
      if (it == vars_.end()) {
        if (fixed_) throw SyntaxError(start, "unknown variable '" + name + "'");
        vars_.push_back(name);
        idx = vars_.size() - 1;
      } else {
        idx = static_cast<std::size_t>(it - vars_.begin());
      }
      if (t.exps.size() < vars_.size()) t.exps.resize(vars_.size(), 0);
      unsigned e = 1;
      skip();
      if (peek() == '^') {
        ++pos_;
        skip();
        const std::size_t es = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (es == pos_) throw SyntaxError(es, "expected exponent");
        auto [ptr, ec] = std::from_chars(s_.data() + es, s_.data() + pos_, e);
        if (ec != std::errc() || ptr != s_.data() + pos_) throw SyntaxError(es, "malformed exponent");
      }
      t.exps[idx] += e;
      return;
    }
    if (c == '\0') throw SyntaxError(pos_, "unexpected end of input");
    throw SyntaxError(pos_, std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  bool fixed_;
  std::vector<std::string> vars_;
  std::size_t pos_ = 0;
};

}  // namespace

SparsePolynomial::SparsePolynomial(std::vector<std::string> vars, std::vector<Term> terms) : vars_(std::move(vars)) {
  std::map<std::vector<unsigned>, double> merged;
  for (auto& t : terms) {
    if (t.exps.size() != vars_.size()) throw Error(ErrorKind::LengthMismatch, "term exponent length");
    merged[t.exps] += t.coeff;
  }
  for (auto& [e, c] : merged)
    if (c != 0.0) terms_.push_back({c, e});
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
    const unsigned da = degree_of(a.exps), db = degree_of(b.exps);
    if (da != db) return da > db;
    return a.exps > b.exps;
  });
}

SparsePolynomial SparsePolynomial::parse(std::string_view text, const std::optional<std::vector<std::string>>& vars) {
  return Parser(text, vars).run();
}

unsigned SparsePolynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, degree_of(t.exps));
  return d;
}

double SparsePolynomial::eval(std::span<const double> point) const {
  if (point.size() != vars_.size()) throw Error(ErrorKind::LengthMismatch, "evaluation point length");
  CompensatedSum s;
  for (const auto& t : terms_) s.add(t.coeff * monomial(point, t.exps));
  return s.value();
}

double SparsePolynomial::scaled_residual(std::span<const double> point) const {
  if (point.size() != vars_.size()) throw Error(ErrorKind::LengthMismatch, "evaluation point length");
  CompensatedSum s;
  double scale = 0.0;
  for (const auto& t : terms_) {
    const double v = t.coeff * monomial(point, t.exps);
    s.add(v);
    scale += std::abs(v);
  }
  return std::abs(s.value()) / (scale + 1e-300);
}

std::vector<double> SparsePolynomial::gradient(std::span<const double> point) const {
  if (point.size() != vars_.size()) throw Error(ErrorKind::LengthMismatch, "evaluation point length");
  std::vector<double> g(vars_.size());
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    CompensatedSum s;
    for (const auto& t : terms_) {
      if (t.exps[k] == 0) continue;
      std::vector<unsigned> e = t.exps;
      --e[k];
      s.add(t.coeff * t.exps[k] * monomial(point, e));
    }
    g[k] = s.value();
  }
  return g;
}

double SparsePolynomial::distance_estimate(std::span<const double> point) const {
  const double v = std::abs(eval(point));
  if (v == 0.0) return 0.0;
  double n = 0.0;
  for (double x : gradient(point)) n += x * x;
  return n > 0.0 ? v / std::sqrt(n) : std::numeric_limits<double>::infinity();
}

double SparsePolynomial::coefficient_sum() const {
  CompensatedSum s;
  for (const auto& t : terms_) s.add(t.coeff);
  return s.value();
}

std::string SparsePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  out.precision(17);
  bool first = true;
  for (const auto& t : terms_) {
    double c = t.coeff;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    c = std::abs(c);
    bool any_var = degree_of(t.exps) > 0;
    bool wrote = false;
    if (c != 1.0 || !any_var) {
      out << c;
      wrote = true;
    }
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (t.exps[i] == 0) continue;
      if (wrote) out << "*";
      out << vars_[i];
      if (t.exps[i] > 1) out << "^" << t.exps[i];
      wrote = true;
    }
    first = false;
  }
  return out.str();
}

double PolyFamily::eval(std::span<const double> point) const {
  if (parts.empty()) throw Error(ErrorKind::InputError, "empty polynomial family");
  if (kind == PolyKind::Product) {
    double v = 1.0;
    for (const auto& p : parts) v *= p.eval(point);
    return v;
  }
  double best = 0.0;
  for (const auto& p : parts) {
    const double v = p.eval(point);
    if (std::abs(v) >= std::abs(best)) best = v;
  }
  return best;
}

double PolyFamily::scaled_residual(std::span<const double> point) const {
  if (parts.empty()) throw Error(ErrorKind::InputError, "empty polynomial family");
  if (kind == PolyKind::Product) {
    double v = 1.0;
    for (const auto& p : parts) v *= p.scaled_residual(point);
    return v;
  }
  double best = 0.0;
  for (const auto& p : parts) best = std::max(best, p.scaled_residual(point));
  return best;
}

unsigned PolyFamily::total_degree() const {
  unsigned d = 0;
  for (const auto& p : parts) d = kind == PolyKind::Product ? d + p.total_degree() : std::max(d, p.total_degree());
  return d;
}

PolyFamily parse_poly_file(std::string_view text, const std::string& name) {
  PolyFamily fam;
  fam.name = name;
  std::optional<std::vector<std::string>> vars;
  std::vector<std::string> chunks(1);
  std::istringstream in{std::string(text)};
  std::string line;
  bool kind_seen = false;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    if (line.rfind("vars:", 0) == 0) {
      std::istringstream vs(line.substr(5));
      std::vector<std::string> v;
      for (std::string w; vs >> w;) v.push_back(w);
      vars = v;
      continue;
    }
    if (line.rfind("kind:", 0) == 0) {
      std::string k = line.substr(5);
      k.erase(0, k.find_first_not_of(" \t"));
      if (k == "single") fam.kind = PolyKind::Single;
      else if (k == "product") fam.kind = PolyKind::Product;
      else if (k == "list") fam.kind = PolyKind::List;
      else throw Error(ErrorKind::InputError, "unknown polynomial kind '" + k + "'");
      kind_seen = true;
      continue;
    }
    if (line == "---") {
      chunks.emplace_back();
      continue;
    }
    chunks.back() += " " + line;
  }
  if (!vars) throw Error(ErrorKind::InputError, "polynomial file without a vars: line");
  fam.vars = *vars;
  for (const auto& c : chunks)
    if (c.find_first_not_of(' ') != std::string::npos) fam.parts.push_back(SparsePolynomial::parse(c, vars));
  if (fam.parts.empty()) throw Error(ErrorKind::InputError, "polynomial file without polynomials");
  if (!kind_seen && fam.parts.size() > 1) fam.kind = PolyKind::List;
  return fam;
}

PolyFamily load_poly_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InputError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_poly_file(buf.str(), path.stem().string());
}

std::filesystem::path default_fixture_root() {
  if (const char* env = std::getenv("LINCON_FIXTURES"); env && *env) return env;
#ifdef LINCON_FIXTURE_DIR
  return LINCON_FIXTURE_DIR;
#else
  return "fixtures";
#endif
}

PolyFamily builtin_polynomial(const std::string& name, const std::filesystem::path& root) {
  return load_poly_file(root / "polynomials" / (name + ".poly"));
}

NormalizedEvaluator::NormalizedEvaluator(PolyFamily poly, std::vector<std::pair<std::size_t, std::size_t>> pairs)
    : poly_(std::move(poly)), pairs_(std::move(pairs)) {
  if (pairs_.size() != poly_.vars.size()) throw Error(ErrorKind::LengthMismatch, "one matrix position per variable");
}

std::vector<double> NormalizedEvaluator::normalize(const SymMatrix& s) const {
  std::vector<double> x;
  x.reserve(pairs_.size());
  for (const auto& [i, j] : pairs_) {
    if (i >= s.order() || j >= s.order()) throw Error(ErrorKind::OutOfRange, "normalization position");
    const double a = s(i, i), b = s(j, j);
    if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorKind::DomainError, "nonpositive diagonal entry");
    x.push_back(s(i, j) / std::sqrt(a * b));
  }
  return x;
}

double NormalizedEvaluator::eval(const SymMatrix& s) const { return poly_.eval(normalize(s)); }

double NormalizedEvaluator::scaled_residual(const SymMatrix& s) const { return poly_.scaled_residual(normalize(s)); }

}  // namespace lincon
