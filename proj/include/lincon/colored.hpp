#pragma once

// Colored graphical models: concentration entries are equal within vertex
// and edge color classes.

#include "lincon/cones.hpp"
#include "lincon/graph.hpp"
#include "lincon/model.hpp"

namespace lincon {

// d = number of vertex classes + number of edge classes.
LinearModel rcon_model(const ColoredGraph& cg);

// Every edge class joins the same unordered pair of vertex classes.
bool edge_color_respects_vertex_color(const ColoredGraph& cg);

// Whether "project_G(S) inside C_G implies project_CG(S) inside C_CG" holds
// for this S. Throws InputError unless cg colors exactly the edges of g.
bool coarsening_monotonicity_check(const Graph& g, const ColoredGraph& cg, const SymMatrix& s);

}  // namespace lincon
