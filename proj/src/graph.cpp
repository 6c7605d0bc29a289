#include "ume/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "ume/errors.hpp"

namespace ume {

namespace {

std::uint64_t arc_key(NodeId tail, NodeId head) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(tail)) << 32) |
         static_cast<std::uint32_t>(head);
}

}  // namespace

Graph::Graph(NodeId node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  if (node_count_ < 0) throw DataError("negative node count");
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges_.size() * 2);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.id != static_cast<EdgeId>(i)) {
      throw DataError("edge ids must be dense 0..|E|-1 (missing or duplicate id " +
                      std::to_string(e.id) + ")");
    }
    if (e.tail < 0 || e.tail >= node_count_ || e.head < 0 ||
        e.head >= node_count_) {
      throw DataError("edge " + std::to_string(e.id) + " endpoint out of range");
    }
    if (e.tail == e.head) {
      throw DataError("self loop on node " + std::to_string(e.tail));
    }
    if (!(e.cost >= 0.0) || !std::isfinite(e.cost)) {
      throw DataError("edge " + std::to_string(e.id) +
                      " cost must be finite and >= 0");
    }
    if (!(e.efficiency >= 0.0 && e.efficiency <= 1.0)) {
      throw DataError("edge " + std::to_string(e.id) +
                      " efficiency must be in [0, 1]");
    }
    if (!seen.insert(arc_key(e.tail, e.head)).second) {
      throw DataError("duplicate arc " + std::to_string(e.tail) + "->" +
                      std::to_string(e.head));
    }
  }

  out_offsets_.assign(node_count_ + 1, 0);
  in_offsets_.assign(node_count_ + 1, 0);
  for (const Edge& e : edges_) {
    ++out_offsets_[e.tail + 1];
    ++in_offsets_[e.head + 1];
  }
  for (NodeId i = 0; i < node_count_; ++i) {
    out_offsets_[i + 1] += out_offsets_[i];
    in_offsets_[i + 1] += in_offsets_[i];
  }
  out_ids_.resize(edges_.size());
  in_ids_.resize(edges_.size());
  std::vector<std::int32_t> onext(out_offsets_.begin(), out_offsets_.end() - 1);
  std::vector<std::int32_t> inext(in_offsets_.begin(), in_offsets_.end() - 1);
  for (const Edge& e : edges_) {  // edges sorted by id => adjacency sorted too
    out_ids_[onext[e.tail]++] = e.id;
    in_ids_[inext[e.head]++] = e.id;
  }
}

const Edge& Graph::edge(EdgeId e) const {
  if (e < 0 || e >= edge_count()) {
    throw DataError("edge id " + std::to_string(e) + " out of range");
  }
  return edges_[e];
}

std::span<const EdgeId> Graph::out_edges(NodeId i) const {
  return {out_ids_.data() + out_offsets_[i],
          static_cast<std::size_t>(out_offsets_[i + 1] - out_offsets_[i])};
}

std::span<const EdgeId> Graph::in_edges(NodeId i) const {
  return {in_ids_.data() + in_offsets_[i],
          static_cast<std::size_t>(in_offsets_[i + 1] - in_offsets_[i])};
}

std::optional<EdgeId> Graph::find_edge(NodeId tail, NodeId head) const {
  if (tail < 0 || tail >= node_count_) return std::nullopt;
  for (EdgeId e : out_edges(tail)) {
    if (edges_[e].head == head) return e;
  }
  return std::nullopt;
}

}  // namespace ume
