#include "lincon/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lincon/errors.hpp"

namespace lincon::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InputError, what); }

std::size_t index_of(const json& v, std::size_t m, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) bad(std::string(what) + " must be a nonnegative integer");
  const auto i = v.get<std::size_t>();
  if (i >= m) throw Error(ErrorKind::OutOfRange, std::string(what) + " " + std::to_string(i) + " out of range");
  return i;
}

double real_of(const json& v) {
  if (!v.is_number()) bad("expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad("number is not finite");
  return x;
}

std::size_t order_of(const json& j) {
  if (!j.is_object() || !j.contains("m")) bad("missing \"m\"");
  const json& m = j.at("m");
  if (!m.is_number_integer() || m.get<long long>() < 1) bad("\"m\" must be a positive integer");
  return m.get<std::size_t>();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view s) {
  const std::string str(trim(s));
  if (str.empty()) bad("empty field");
  char* end = nullptr;
  const double v = std::strtod(str.c_str(), &end);
  if (end != str.c_str() + str.size() || !std::isfinite(v)) bad("not a number: \"" + str + "\"");
  return v;
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

json read_json(const std::filesystem::path& path) { return parse_json(read_text(path)); }

Graph graph_from_json(const json& j) {
  const std::size_t m = order_of(j);
  Graph g(m);
  if (!j.contains("edges") || !j.at("edges").is_array()) bad("missing \"edges\"");
  for (const json& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) bad("edge must be [i, j]");
    g.add_edge(index_of(e[0], m, "vertex"), index_of(e[1], m, "vertex"));
  }
  return g;
}

ColoredGraph colored_from_json(const json& j) {
  ColoredGraph cg;
  cg.order = order_of(j);
  if (!j.contains("vertex_classes") || !j.contains("edge_classes")) bad("missing color classes");
  for (const json& c : j.at("vertex_classes")) {
    if (!c.is_array()) bad("vertex class must be a list");
    auto& cls = cg.vertex_classes.emplace_back();
    for (const json& v : c) cls.push_back(index_of(v, cg.order, "vertex"));
  }
  for (const json& c : j.at("edge_classes")) {
    if (!c.is_array()) bad("edge class must be a list");
    auto& cls = cg.edge_classes.emplace_back();
    for (const json& e : c) {
      if (!e.is_array() || e.size() != 2) bad("edge must be [i, j]");
      cls.push_back(make_edge(index_of(e[0], cg.order, "vertex"), index_of(e[1], cg.order, "vertex")));
    }
  }
  cg.validate();
  return cg;
}

ModelSpec model_from_json(const json& j) {
  const std::size_t m = order_of(j);
  if (j.contains("basis")) {
    std::vector<BasisMatrix> basis;
    for (const json& b : j.at("basis")) {
      if (!b.is_array()) bad("basis matrix must be a list of triplets");
      std::vector<Triplet> trips;
      for (const json& t : b) {
        if (!t.is_array() || t.size() != 3) bad("triplet must be [i, j, value]");
        trips.push_back({index_of(t[0], m, "row"), index_of(t[1], m, "column"), real_of(t[2])});
      }
      basis.emplace_back(m, std::move(trips));
    }
    return {LinearModel(m, std::move(basis)), std::nullopt, std::nullopt};
  }
  if (j.contains("vertex_classes")) {
    ColoredGraph cg = colored_from_json(j);
    return {from_colored(cg), cg.underlying(), cg};
  }
  if (j.contains("edges")) {
    Graph g = graph_from_json(j);
    return {from_graph(g), g, std::nullopt};
  }
  bad("model needs \"basis\", \"edges\" or color classes");
}

PartialMatrix partial_from_json(const json& j) {
  PartialMatrix p;
  p.m = order_of(j);
  p.diagonal = vector_from_json(j.value("diagonal", json::array()));
  if (p.diagonal.size() != p.m) throw Error(ErrorKind::LengthMismatch, "diagonal length");
  if (j.contains("entries"))
    for (const json& t : j.at("entries")) {
      if (!t.is_array() || t.size() != 3) bad("entry must be [i, j, value]");
      const std::size_t a = index_of(t[0], p.m, "row");
      const std::size_t b = index_of(t[1], p.m, "column");
      if (a == b) bad("diagonal entries belong in \"diagonal\"");
      p.known[make_edge(a, b)] = real_of(t[2]);
    }
  return p;
}

std::vector<double> vector_from_json(const json& j) {
  if (!j.is_array()) bad("expected a list of numbers");
  std::vector<double> v;
  for (const json& x : j) v.push_back(real_of(x));
  return v;
}

SymMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) bad("expected a square list of rows");
  std::vector<std::vector<double>> rows;
  for (const json& r : j) rows.push_back(vector_from_json(r));
  for (const auto& r : rows)
    if (r.size() != rows.size()) bad("matrix is not square");
  double scale = 0.0;
  for (const auto& r : rows)
    for (double v : r) scale = std::max(scale, std::abs(v));
  if (max_asymmetry(rows) > 1e-9 * std::max(scale, 1.0)) bad("matrix is not symmetric");
  return SymMatrix::from_rows(rows);
}

Matrix matrix_from_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    if (line.empty() || line.front() == '#') continue;
    rows.push_back(list_from_text(line));
    if (rows.back().size() != rows.front().size()) bad("CSV rows have different lengths");
  }
  if (rows.empty()) bad("CSV has no rows");
  return Matrix::from_rows(rows);
}

std::vector<double> list_from_text(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    out.push_back(parse_real(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

json to_json(std::span<const double> v) {
  json out = json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

json to_json(const SymMatrix& s) {
  json out = json::array();
  for (std::size_t i = 0; i < s.order(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < s.order(); ++j) row.push_back(number(s(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const Matrix& a) {
  json out = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) out.push_back(to_json(a.row(i)));
  return out;
}

std::string dump(const json& j) { return j.dump(2); }

}  // namespace lincon::io
