#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ume {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;

struct Edge {
  EdgeId id = 0;
  NodeId tail = 0;
  NodeId head = 0;
  double cost = 0.0;        // traversal cost, >= 0
  double efficiency = 0.0;  // interdiction efficiency d, in [0, 1]
};

// Directed graph with dense node ids 0..|N|-1 and edge ids 0..|E|-1.
// Immutable after construction; the constructor rejects self loops,
// duplicate arcs, non-dense ids, negative costs and d outside [0, 1].
class Graph {
 public:
  Graph() = default;
  Graph(NodeId node_count, std::vector<Edge> edges);

  NodeId node_count() const { return node_count_; }
  EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const;

  std::span<const EdgeId> out_edges(NodeId i) const;
  std::span<const EdgeId> in_edges(NodeId i) const;
  std::optional<EdgeId> find_edge(NodeId tail, NodeId head) const;

 private:
  NodeId node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::int32_t> out_offsets_, in_offsets_;
  std::vector<EdgeId> out_ids_, in_ids_;
};

}  // namespace ume
