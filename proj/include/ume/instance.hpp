#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ume/graph.hpp"
#include "ume/transition.hpp"

namespace ume {

struct EvaderSpec {
  double weight = 1.0;                             // w in (0, 1]
  std::vector<std::pair<NodeId, double>> source;   // sparse a, sums to 1
  NodeId target = 0;
  TransitionMatrix matrix;
  std::optional<double> model_lambda;  // set when matrix came from the chain model

  std::vector<double> dense_source(NodeId node_count) const;
};

// Ordered set of interdicted edges (selection order preserved) with an O(1)
// membership indicator.
class InterdictionSet {
 public:
  InterdictionSet() = default;
  explicit InterdictionSet(EdgeId edge_count) : indicator_(edge_count, 0) {}
  static InterdictionSet from_edges(std::span<const EdgeId> edges,
                                    EdgeId edge_count);

  void add(EdgeId e);     // throws DataError on out-of-range or duplicate
  void remove_last();
  bool contains(EdgeId e) const {
    return e >= 0 && e < static_cast<EdgeId>(indicator_.size()) &&
           indicator_[e] != 0;
  }
  std::span<const EdgeId> selected() const { return selected_; }
  std::size_t size() const { return selected_.size(); }
  const std::vector<std::uint8_t>& indicator() const { return indicator_; }

 private:
  std::vector<EdgeId> selected_;
  std::vector<std::uint8_t> indicator_;
};

struct ProblemInstance {
  Graph graph;
  std::vector<EvaderSpec> evaders;
  std::int32_t budget = 0;
  double tolerance = 1e-9;

  // Throws DataError on the first violated invariant (weights, sources,
  // budget, chain validity).
  void validate() const;
};

}  // namespace ume
