#include "lincon/graph.hpp"

#include <string>

#include "lincon/errors.hpp"

namespace lincon {

Graph::Graph(std::size_t order, const std::vector<Edge>& edges) : Graph(order) {
  for (const auto& [i, j] : edges) add_edge(i, j);
}

Graph Graph::complete(std::size_t order) {
  Graph g(order);
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = i + 1; j < order; ++j) g.add_edge(i, j);
  return g;
}

Graph Graph::cycle(std::size_t order) {
  Graph g(order);
  for (std::size_t i = 0; i < order; ++i) g.add_edge(i, (i + 1) % order);
  return g;
}

Graph Graph::path(std::size_t order) {
  Graph g(order);
  for (std::size_t i = 0; i + 1 < order; ++i) g.add_edge(i, i + 1);
  return g;
}

void Graph::add_edge(std::size_t i, std::size_t j) {
  if (i >= m_ || j >= m_)
    throw Error(ErrorKind::OutOfRange, "edge (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  if (i == j) throw Error(ErrorKind::InputError, "self-loops are implicit");
  edges_.insert(make_edge(i, j));
  adj_[i].insert(j);
  adj_[j].insert(i);
}

bool Graph::has_edge(std::size_t i, std::size_t j) const {
  if (i >= m_ || j >= m_ || i == j) return false;
  return adj_[i].count(j) > 0;
}

Graph Graph::induced(const std::vector<std::size_t>& vertices) const {
  Graph out(vertices.size());
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      if (has_edge(vertices[a], vertices[b])) out.add_edge(a, b);
  return out;
}

void ColoredGraph::validate() const {
  std::vector<int> seen(order, 0);
  for (const auto& cls : vertex_classes) {
    if (cls.empty()) throw Error(ErrorKind::InputError, "empty vertex class");
    for (std::size_t v : cls) {
      if (v >= order) throw Error(ErrorKind::InputError, "vertex " + std::to_string(v) + " out of range");
      if (seen[v]++) throw Error(ErrorKind::InputError, "vertex " + std::to_string(v) + " colored twice");
    }
  }
  for (std::size_t v = 0; v < order; ++v)
    if (!seen[v]) throw Error(ErrorKind::InputError, "vertex " + std::to_string(v) + " has no color");
  std::set<Edge> edges;
  for (const auto& cls : edge_classes) {
    if (cls.empty()) throw Error(ErrorKind::InputError, "empty edge class");
    for (const auto& [i, j] : cls) {
      if (i >= order || j >= order || i == j) throw Error(ErrorKind::InputError, "invalid colored edge");
      if (!edges.insert(make_edge(i, j)).second) throw Error(ErrorKind::InputError, "edge colored twice");
    }
  }
}

Graph ColoredGraph::underlying() const {
  Graph g(order);
  for (const auto& cls : edge_classes)
    for (const auto& [i, j] : cls) g.add_edge(i, j);
  return g;
}

ColoredGraph ColoredGraph::discrete(const Graph& g) {
  ColoredGraph cg;
  cg.order = g.order();
  for (std::size_t v = 0; v < g.order(); ++v) cg.vertex_classes.push_back({v});
  for (const auto& e : g.edges()) cg.edge_classes.push_back({e});
  return cg;
}

}  // namespace lincon
