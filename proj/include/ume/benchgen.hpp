#pragma once

#include <cstdint>
#include <vector>

#include "ume/instance.hpp"

namespace ume {

// Geographical threshold graph: nodes uniform in the unit square, weights
// exponential with mean weight_scale, arc pair (i, j) and (j, i) present iff
// (w_i + w_j) * dist^-alpha >= theta. Edge cost is the Euclidean length.
// weight_scale is calibrated so n=100, theta=30 averages ~1600 directed edges.
struct GtgConfig {
  std::int32_t n = 100;
  double theta = 30.0;
  double alpha = 2.0;
  double weight_scale = 1.021;
  std::uint64_t seed = 1;
};

Graph gtg_generate(const GtgConfig& config);

// Bidirectional 4-neighbor lattice plus `extra` random out-edges per node to
// uniformly random non-adjacent nodes.
struct GridConfig {
  std::int32_t rows = 8;
  std::int32_t cols = 8;
  std::int32_t extra = 2;
  std::uint64_t seed = 1;
};

Graph grid_generate(const GridConfig& config);

struct InstanceConfig {
  std::vector<double> lambdas;  // one chain spread parameter per evader
  double d_uniform = 0.5;
  std::int32_t budget = 10;
  std::uint64_t seed = 1;
  bool unit_costs = true;         // override traversal costs to 1
  bool restrict_sources = true;   // uniform over nodes that can reach the target
};

// Uniform efficiencies and costs, one evader per lambda with weight 1/K,
// a seeded random target and a uniform source distribution. Targets no node
// can reach are re-drawn (bounded retries).
ProblemInstance make_instance(const Graph& graph, const InstanceConfig& config);

}  // namespace ume
