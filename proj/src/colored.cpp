#include "lincon/colored.hpp"

#include <set>

namespace lincon {

LinearModel rcon_model(const ColoredGraph& cg) { return from_colored(cg); }

bool edge_color_respects_vertex_color(const ColoredGraph& cg) {
  cg.validate();
  std::vector<std::size_t> color(cg.order);
  for (std::size_t c = 0; c < cg.vertex_classes.size(); ++c)
    for (std::size_t v : cg.vertex_classes[c]) color[v] = c;
  for (const auto& cls : cg.edge_classes) {
    std::set<std::pair<std::size_t, std::size_t>> ends;
    for (const auto& [i, j] : cls) ends.insert(make_edge(color[i], color[j]));
    if (ends.size() > 1) return false;
  }
  return true;
}

bool coarsening_monotonicity_check(const Graph& g, const ColoredGraph& cg, const SymMatrix& s) {
  cg.validate();
  if (cg.order != g.order() || cg.underlying().edges() != g.edges())
    throw Error(ErrorKind::InputError, "coloring does not cover the graph's edges");
  const LinearModel fine = from_graph(g);
  const LinearModel coarse = from_colored(cg);
  if (membership(fine, fine.project(s)).verdict != Verdict::Inside) return true;
  return membership(coarse, coarse.project(s)).verdict == Verdict::Inside;
}

}  // namespace lincon
