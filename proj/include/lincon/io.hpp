#pragma once

// File formats: models, graphs, colored graphs and partial matrices as JSON,
// matrices A as CSV. Every reader throws InputError on malformed input.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "lincon/graph.hpp"
#include "lincon/graphops.hpp"
#include "lincon/model.hpp"
#include "lincon/symcore.hpp"

namespace lincon::io {

using json = nlohmann::ordered_json;

std::string read_text(const std::filesystem::path& path);
json parse_json(std::string_view text);
json read_json(const std::filesystem::path& path);

// A model file in any of the three shapes: {"m", "basis"}, {"m", "edges"}
// or {"m", "vertex_classes", "edge_classes"}. The graph is kept when there
// is one.
struct ModelSpec {
  LinearModel model;
  std::optional<Graph> graph;
  std::optional<ColoredGraph> colored;
};

ModelSpec model_from_json(const json& j);
Graph graph_from_json(const json& j);
ColoredGraph colored_from_json(const json& j);
PartialMatrix partial_from_json(const json& j);

std::vector<double> vector_from_json(const json& j);
// Square array of rows, symmetric up to 1e-9 relative.
SymMatrix matrix_from_json(const json& j);

// Comma-separated rows; blank lines and '#' lines are skipped.
Matrix matrix_from_csv(std::string_view text);
// Comma-separated list of reals, e.g. "0.1,-0.2,0.3".
std::vector<double> list_from_text(std::string_view text);

// Rounded to 12 significant digits; non-finite values become null.
json number(double v);
json to_json(std::span<const double> v);
json to_json(const SymMatrix& s);
json to_json(const Matrix& a);

// Two-space indented, key order as inserted.
std::string dump(const json& j);

}  // namespace lincon::io
