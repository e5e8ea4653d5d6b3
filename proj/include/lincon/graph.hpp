#pragma once

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

namespace lincon {

using Edge = std::pair<std::size_t, std::size_t>;

// Normalizes an unordered pair to (min, max).
inline Edge make_edge(std::size_t i, std::size_t j) { return i < j ? Edge{i, j} : Edge{j, i}; }

// Undirected simple graph on vertices 0..m-1. Self-loops are implicit: every
// vertex carries a diagonal parameter, so they are never stored.
class Graph {
 public:
  explicit Graph(std::size_t order = 0) : m_(order), adj_(order) {}
  Graph(std::size_t order, const std::vector<Edge>& edges);

  static Graph complete(std::size_t order);
  static Graph cycle(std::size_t order);
  static Graph path(std::size_t order);

  std::size_t order() const noexcept { return m_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  // Throws OutOfRange for bad endpoints and InputError for loops; adding an
  // existing edge is a no-op.
  void add_edge(std::size_t i, std::size_t j);
  bool has_edge(std::size_t i, std::size_t j) const;

  // Lexicographic order.
  std::vector<Edge> edges() const { return {edges_.begin(), edges_.end()}; }
  const std::set<std::size_t>& neighbors(std::size_t v) const { return adj_[v]; }

  Graph induced(const std::vector<std::size_t>& vertices) const;

 private:
  std::size_t m_;
  std::set<Edge> edges_;
  std::vector<std::set<std::size_t>> adj_;
};

// Graph with vertex and edge colorings. Classes are kept in input order since
// that order fixes the model's coordinates.
struct ColoredGraph {
  std::size_t order = 0;
  std::vector<std::vector<std::size_t>> vertex_classes;
  std::vector<std::vector<Edge>> edge_classes;

  // Throws InputError unless both colorings are partitions (vertices of
  // 0..order-1, edges of a simple graph).
  void validate() const;
  Graph underlying() const;

  // Every vertex and every edge in its own class.
  static ColoredGraph discrete(const Graph& g);
};

}  // namespace lincon
