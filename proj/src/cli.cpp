#include "lincon/cli.hpp"

#include <filesystem>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lincon/cases.hpp"
#include "lincon/cones.hpp"
#include "lincon/diagmod.hpp"
#include "lincon/graphops.hpp"
#include "lincon/io.hpp"
#include "lincon/polyeval.hpp"
#include "lincon/solver.hpp"

namespace lincon::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

struct Options {
  std::string format = "json";
  std::uint64_t seed = 0;
  std::string fixtures;
  std::optional<double> tol;
  int count = 100;
  std::vector<std::string> args;
};

// A statistic or sample matrix: a JSON file holding a list or a square list
// of rows, or an inline comma-separated list.
json read_data_arg(const std::string& arg) {
  if (fs::exists(arg)) {
    const std::string text = io::read_text(arg);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') return io::parse_json(text);
    return io::to_json(io::list_from_text(text));
  }
  return io::to_json(io::list_from_text(arg));
}

SuffStats stats_arg(const LinearModel& model, const std::string& arg) {
  const json j = read_data_arg(arg);
  if (!j.empty() && j[0].is_array()) return model.project(io::matrix_from_json(j));
  SuffStats t(io::vector_from_json(j));
  if (t.size() != model.dimension()) throw Error(ErrorKind::LengthMismatch, "statistic length differs from model dimension");
  return t;
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Objects as "key: value" lines, numeric lists space-separated, lists of
// lists one row per line.
void write_text(std::ostream& out, const json& j, const std::string& indent = "") {
  for (const auto& [key, v] : j.items()) {
    if (v.is_object()) {
      out << indent << key << ":\n";
      write_text(out, v, indent + "  ");
    } else if (v.is_array() && !v.empty() && (v[0].is_array() || v[0].is_object())) {
      out << indent << key << ":\n";
      for (const auto& row : v) {
        if (row.is_object()) {
          write_text(out, row, indent + "  ");
          out << indent << "  --\n";
          continue;
        }
        out << indent << " ";
        for (const auto& x : row) out << ' ' << scalar_text(x);
        out << '\n';
      }
    } else if (v.is_array()) {
      out << indent << key << ':';
      for (const auto& x : v) out << ' ' << scalar_text(x);
      out << '\n';
    } else {
      out << indent << key << ": " << scalar_text(v) << '\n';
    }
  }
}

void emit(std::ostream& out, const Options& o, const json& j) {
  if (o.format == "text")
    write_text(out, j);
  else
    out << io::dump(j) << '\n';
}

json lambda_json(const CoeffVector& l) { return io::to_json(l.span()); }

int cmd_mle(const Options& o, std::ostream& out, std::ostream& err) {
  const auto spec = io::model_from_json(io::read_json(o.args.at(0)));
  const SuffStats t = stats_arg(spec.model, o.args.at(1));
  MleOptions opts;
  if (o.tol) opts.tolerance = *o.tol;
  const SolveReport r = mle(spec.model, t, opts);
  json j;
  j["status"] = to_string(r.status);
  j["iterations"] = r.iterations;
  j["stationarity"] = io::number(r.stationarity);
  j["objective"] = io::number(r.objective);
  j["lambda"] = lambda_json(r.lambda);
  j["Sigma"] = io::to_json(r.Sigma);
  j["K"] = io::to_json(r.K);
  emit(out, o, j);
  if (r.status != SolveStatus::Converged) {
    err << "mle: " << to_string(r.status) << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

int cmd_exists(const Options& o, std::ostream& out, std::ostream&) {
  const auto spec = io::model_from_json(io::read_json(o.args.at(0)));
  const MembershipVerdict v = membership(spec.model, stats_arg(spec.model, o.args.at(1)));
  const double eps = o.tol.value_or(kMembershipEpsilon);
  const Verdict verdict = v.value > eps ? Verdict::Inside : v.value < -eps ? Verdict::Outside : Verdict::Boundary;
  json j;
  j["verdict"] = to_string(verdict);
  j["mle_exists"] = verdict == Verdict::Inside;
  j["certificate_value"] = io::number(v.value);
  j["certificate_lambda"] = lambda_json(v.lambda);
  emit(out, o, j);
  return kExitOk;
}

int cmd_boundary(const Options& o, std::ostream& out, std::ostream&) {
  const auto spec = io::model_from_json(io::read_json(o.args.at(0)));
  const SuffStats t = boundary_bisect(spec.model, stats_arg(spec.model, o.args.at(1)), stats_arg(spec.model, o.args.at(2)));
  json j;
  j["boundary_point"] = io::to_json(t.span());
  emit(out, o, j);
  return kExitOk;
}

Matrix csv_arg(const std::string& path) { return io::matrix_from_csv(io::read_text(path)); }

int cmd_beta(const Options& o, std::ostream& out, std::ostream&) {
  const Matrix a = csv_arg(o.args.at(0));
  json j;
  j["beta"] = beta_invariant(a, o.seed);
  emit(out, o, j);
  return kExitOk;
}

int cmd_center(const Options& o, std::ostream& out, std::ostream&) {
  const Matrix a = csv_arg(o.args.at(0));
  const auto t = io::vector_from_json(read_data_arg(o.args.at(1)));
  json j;
  j["center"] = io::to_json(analytic_center(a, t));
  emit(out, o, j);
  return kExitOk;
}

int cmd_circuits(const Options& o, std::ostream& out, std::ostream& err) {
  const Matrix a = csv_arg(o.args.at(0));
  json list = json::array();
  for (const Circuit& c : circuits(a)) {
    if (c.support.size() == 1) err << "circuits: loop at column " << c.support[0] << " gives a constant generator\n";
    json e;
    e["support"] = c.support;
    e["coefficients"] = io::to_json(c.coefficients);
    e["integral"] = c.integral;
    e["polynomial"] = circuit_polynomial(c, a.cols()).to_string();
    list.push_back(std::move(e));
  }
  json j;
  j["circuits"] = std::move(list);
  emit(out, o, j);
  return kExitOk;
}

int cmd_cycle(const Options& o, std::ostream& out, std::ostream&) {
  const auto x = io::list_from_text(o.args.at(0));
  const CycleVerdict v = cycle_angle_membership(x);
  const double eps = o.tol.value_or(kAngleEpsilon);
  const Verdict verdict = v.value > eps ? Verdict::Inside : v.value < -eps ? Verdict::Outside : Verdict::Boundary;
  json j;
  j["verdict"] = to_string(verdict);
  j["slack"] = io::number(v.value);
  j["rank2_residual"] = io::number(rank2_closure_residual(x));
  emit(out, o, j);
  return kExitOk;
}

int cmd_suspend(const Options& o, std::ostream& out, std::ostream&) {
  const Graph g = io::graph_from_json(io::read_json(o.args.at(0)));
  const SymMatrix s = io::matrix_from_json(io::read_json(o.args.at(1)));
  const Graph gs = suspend(g);
  json edges = json::array();
  for (const auto& [a, b] : gs.edges()) edges.push_back({a, b});
  json j;
  j["edges"] = std::move(edges);
  j["reduced_sample"] = io::to_json(schur_reduce_sample(s));
  j["Sigma"] = io::to_json(suspension_mle(g, s));
  emit(out, o, j);
  return kExitOk;
}

int cmd_ranks(const Options& o, std::ostream& out, std::ostream&) {
  if (o.count < 1) throw Error(ErrorKind::InputError, "--count must be positive");
  const auto spec = io::model_from_json(io::read_json(o.args.at(0)));
  json freq = json::object();
  for (const auto& [rank, n] : extreme_rank_sample(spec.model, o.count, o.seed)) freq[std::to_string(rank)] = n;
  json j;
  j["samples"] = o.count;
  j["ranks"] = std::move(freq);
  emit(out, o, j);
  return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  const fs::path root = o.fixtures.empty() ? default_fixture_root() : fs::path(o.fixtures);
  const std::string& id = o.args.at(0);
  const std::vector<cases::CaseResult> results =
      id == "all" ? cases::run_all(root, o.seed) : std::vector{cases::run_case(id, root, o.seed)};
  bool all = true;
  if (o.format == "text") {
    for (const auto& r : results) {
      out << (r.pass ? "PASS " : "FAIL ") << r.id << '\n';
      std::ostringstream body;
      write_text(body, r.data, "  ");
      out << body.str();
    }
  } else {
    json list = json::array();
    for (const auto& r : results) {
      json e;
      e["id"] = r.id;
      e["pass"] = r.pass;
      e["data"] = r.data;
      if (!r.pass) e["message"] = r.message;
      list.push_back(std::move(e));
    }
    json j;
    j["cases"] = std::move(list);
    out << io::dump(j) << '\n';
  }
  for (const auto& r : results)
    if (!r.pass) {
      all = false;
      err << "check: " << r.id << " failed: " << r.message << '\n';
    }
  return all ? kExitOk : kExitNumeric;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian models with linear constraints on the concentration matrix"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--fixtures", o.fixtures, "Fixture directory for check");
  app.add_option("--tol", o.tol, "Tolerance override: mle stationarity, exists and cycle verdict margin");

  using Handler = int (*)(const Options&, std::ostream&, std::ostream&);
  struct Sub {
    const char* name;
    const char* help;
    std::vector<const char*> args;
    Handler fn;
  };
  const std::vector<Sub> subs{
      {"mle", "Maximum likelihood estimate", {"model", "data"}, cmd_mle},
      {"exists", "Whether the MLE exists", {"model", "data"}, cmd_exists},
      {"boundary", "Bisect to the boundary of the cone of statistics", {"model", "t_in", "t_out"}, cmd_boundary},
      {"beta", "Bounded regions of a diagonal model's arrangement", {"A"}, cmd_beta},
      {"center", "Analytic center of {x > 0 : A x = t}", {"A", "t"}, cmd_center},
      {"circuits", "Circuits of A and their polynomials", {"A"}, cmd_circuits},
      {"cycle", "Cycle completability of unit-diagonal entries", {"x"}, cmd_cycle},
      {"suspend", "MLE on the suspension of a graph", {"graph", "matrix"}, cmd_suspend},
      {"ranks", "Ranks at extreme points of the trace-one slice", {"model"}, cmd_ranks},
      {"check", "Run a reproduction case, or all", {"id"}, cmd_check},
  };
  std::vector<std::string> values(4);
  Handler chosen = nullptr;
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    for (std::size_t k = 0; k < s.args.size(); ++k) sub->add_option(s.args[k], values[k])->required();
    if (std::string(s.name) == "ranks") sub->add_option("--count", o.count, "Number of samples");
    sub->callback([&, s] {
      chosen = s.fn;
      o.args.assign(values.begin(), values.begin() + static_cast<long>(s.args.size()));
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitInput;
  }

  try {
    return chosen(o, out, err);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return e.is_numeric() ? kExitNumeric : kExitInput;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace lincon::cli
