#include "ume/benchgen.hpp"

#include <cmath>
#include <string>
#include <unordered_set>

#include "ume/errors.hpp"
#include "ume/rng.hpp"

namespace ume {

Graph gtg_generate(const GtgConfig& config) {
  if (config.n < 2) throw DataError("gtg: n must be >= 2");
  if (!(config.theta > 0.0)) throw DataError("gtg: theta must be positive");
  if (!(config.alpha > 0.0)) throw DataError("gtg: alpha must be positive");
  if (!(config.weight_scale > 0.0)) {
    throw DataError("gtg: weight_scale must be positive");
  }

  Rng rng(config.seed);
  std::vector<double> x(config.n), y(config.n), w(config.n);
  for (std::int32_t i = 0; i < config.n; ++i) {
    x[i] = rng.uniform();
    y[i] = rng.uniform();
  }
  for (std::int32_t i = 0; i < config.n; ++i) {
    w[i] = rng.exponential(config.weight_scale);
  }

  std::vector<Edge> edges;
  EdgeId next = 0;
  for (std::int32_t i = 0; i < config.n; ++i) {
    for (std::int32_t j = i + 1; j < config.n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      const double dist = std::sqrt(dx * dx + dy * dy);
      // (w_i + w_j) * dist^-alpha >= theta, with coincident points joined
      const bool joined =
          dist == 0.0 ||
          w[i] + w[j] >= config.theta * std::pow(dist, config.alpha);
      if (joined) {
        edges.push_back(Edge{next++, i, j, dist, 0.0});
        edges.push_back(Edge{next++, j, i, dist, 0.0});
      }
    }
  }
  return Graph(config.n, std::move(edges));
}

Graph grid_generate(const GridConfig& config) {
  if (config.rows < 1 || config.cols < 1) {
    throw DataError("grid: rows and cols must be >= 1");
  }
  if (config.extra < 0) throw DataError("grid: extra must be >= 0");
  const std::int64_t n64 =
      static_cast<std::int64_t>(config.rows) * config.cols;
  const NodeId n = static_cast<NodeId>(n64);
  if (config.extra > n - 1) {
    throw DataError("grid: extra exceeds possible out-degree");
  }

  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> arcs;
  auto key = [](NodeId t, NodeId h) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(t)) << 32) |
           static_cast<std::uint32_t>(h);
  };
  EdgeId next = 0;
  auto push = [&](NodeId t, NodeId h) {
    edges.push_back(Edge{next++, t, h, 1.0, 0.0});
    arcs.insert(key(t, h));
  };
  for (std::int32_t r = 0; r < config.rows; ++r) {
    for (std::int32_t c = 0; c < config.cols; ++c) {
      const NodeId v = r * config.cols + c;
      if (c + 1 < config.cols) {
        push(v, v + 1);
        push(v + 1, v);
      }
      if (r + 1 < config.rows) {
        push(v, v + config.cols);
        push(v + config.cols, v);
      }
    }
  }

  Rng rng(config.seed);
  for (NodeId v = 0; v < n; ++v) {
    for (std::int32_t k = 0; k < config.extra; ++k) {
      NodeId h = v;
      std::int32_t tries = 0;
      do {
        h = static_cast<NodeId>(rng.uniform_int(0, n - 1));
        if (++tries > 64 * n) {
          throw DataError("grid: could not place extra edge from node " +
                          std::to_string(v));
        }
      } while (h == v || arcs.contains(key(v, h)));
      push(v, h);
    }
  }
  return Graph(n, std::move(edges));
}

ProblemInstance make_instance(const Graph& graph,
                              const InstanceConfig& config) {
  if (config.lambdas.empty()) {
    throw DataError("make_instance: at least one evader lambda required");
  }
  if (!(config.d_uniform >= 0.0 && config.d_uniform <= 1.0)) {
    throw DataError("make_instance: d must be in [0, 1]");
  }

  std::vector<Edge> edges = graph.edges();
  for (Edge& e : edges) {
    if (config.unit_costs) e.cost = 1.0;
    e.efficiency = config.d_uniform;
  }

  ProblemInstance p;
  p.graph = Graph(graph.node_count(), std::move(edges));
  p.budget = config.budget;
  const NodeId n = p.graph.node_count();
  const std::size_t evader_count = config.lambdas.size();

  Rng rng(config.seed);
  for (std::size_t k = 0; k < evader_count; ++k) {
    const double lambda = config.lambdas[k];
    EvaderSpec ev;
    ev.weight = 1.0 / static_cast<double>(evader_count);
    ev.model_lambda = lambda;

    bool placed = false;
    for (std::int32_t attempt = 0; attempt < 50 && !placed; ++attempt) {
      const NodeId target = static_cast<NodeId>(rng.uniform_int(0, n - 1));
      TransitionMatrix chain = build_evader_transition(p.graph, target, lambda);
      std::vector<NodeId> sources;
      if (config.restrict_sources) {
        const std::vector<bool> reach = reaches_target(chain, target);
        for (NodeId i = 0; i < n; ++i) {
          if (i != target && reach[i]) sources.push_back(i);
        }
      } else {
        for (NodeId i = 0; i < n; ++i) {
          if (i != target) sources.push_back(i);
        }
      }
      if (sources.empty()) continue;  // nothing can reach it; redraw target
      ev.target = target;
      ev.matrix = std::move(chain);
      const double mass = 1.0 / static_cast<double>(sources.size());
      ev.source.clear();
      for (NodeId i : sources) ev.source.emplace_back(i, mass);
      placed = true;
    }
    if (!placed) {
      throw DataError("make_instance: no reachable target found for evader " +
                      std::to_string(k));
    }
    p.evaders.push_back(std::move(ev));
  }

  p.validate();
  return p;
}

}  // namespace ume
