#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ume/instance.hpp"

namespace ume {

// Node-interdiction problem: per-node efficiencies instead of per-edge.
// Interdicting node v scales every transition entering v by (1 - d_v), i.e.
// the evader is caught while arriving. (Arrival semantics make interdicting
// a target meaningful and are what the edge<->node reductions preserve.)
struct NodeProblem {
  Graph graph;  // edge efficiencies unused (zero)
  std::vector<double> node_efficiency;
  std::vector<EvaderSpec> evaders;
  std::int32_t budget = 0;
  double tolerance = 1e-9;

  // Structural checks: weights, sources, efficiency table, budget, row sums,
  // zero target rows. Reachability is not required here because edge-split
  // images of valid problems may route positive mass into dead ends.
  void validate() const;
};

double node_objective(const NodeProblem& p, std::span<const NodeId> interdicted);

// Bijection between the interdictable elements of the original and the
// transformed problem, with enough provenance to translate solutions back.
struct TransformMap {
  enum class Direction { kEdgeToNode, kNodeToEdge };
  Direction direction = Direction::kEdgeToNode;
  std::vector<std::int32_t> forward;  // original element id -> new element id
  std::vector<std::int32_t> inverse;  // new element id -> original id, -1 if none

  std::vector<std::int32_t> translate(std::span<const std::int32_t> ids) const;
  std::vector<std::int32_t> translate_back(
      std::span<const std::int32_t> ids) const;
};

// Splits every edge (i, j) with an interdictable middle node v carrying
// d_v = d_ij; original nodes get d = 0. Evader matrices are rerouted through
// v with probability 1 on (v, j). Objectives of corresponding sets match.
std::pair<NodeProblem, TransformMap> edge_problem_to_node_problem(
    const ProblemInstance& p);

// Represents every node v by an arc i(v) -> j(v) with d = d_v and M = 1;
// in-edges enter i(v), out-edges leave j(v), targets move to j(v).
std::pair<ProblemInstance, TransformMap> node_problem_to_edge_problem(
    const NodeProblem& p);

}  // namespace ume
