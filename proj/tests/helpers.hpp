#pragma once

#include <algorithm>
#include <vector>

#include "ume/benchgen.hpp"
#include "ume/errors.hpp"
#include "ume/instance.hpp"
#include "ume/rng.hpp"

namespace ume::test {

// s -> v -> t chain with unit costs. Edge 0 = (s, v), edge 1 = (v, t).
inline ProblemInstance chain_instance(double d = 0.5, std::int32_t budget = 2) {
  Graph g(3, {Edge{0, 0, 1, 1.0, d}, Edge{1, 1, 2, 1.0, d}});
  EvaderSpec ev;
  ev.weight = 1.0;
  ev.source = {{0, 1.0}};
  ev.target = 2;
  ev.matrix = build_evader_transition(g, 2, 1.0);
  ev.model_lambda = 1.0;
  ProblemInstance p{std::move(g), {std::move(ev)}, budget, 1e-9};
  p.validate();
  return p;
}

// s=0, a=1, b=2, t=3. Edges: 0=(s,a), 1=(s,b), 2=(a,t), 3=(b,t).
// Explicit split probabilities at s; unit probability on the arms.
inline ProblemInstance diamond_instance(double p_sa, double d,
                                        std::int32_t budget) {
  Graph g(4, {Edge{0, 0, 1, 1.0, d}, Edge{1, 0, 2, 1.0, d},
              Edge{2, 1, 3, 1.0, d}, Edge{3, 2, 3, 1.0, d}});
  EvaderSpec ev;
  ev.weight = 1.0;
  ev.source = {{0, 1.0}};
  ev.target = 3;
  const std::vector<double> probs{p_sa, 1.0 - p_sa, 1.0, 1.0};
  ev.matrix = TransitionMatrix(g, probs);
  ProblemInstance p{std::move(g), {std::move(ev)}, budget, 1e-9};
  p.validate();
  return p;
}

// Random digraph: every ordered pair gets an arc with probability arc_prob.
inline Graph random_graph(Rng& rng, NodeId n, double arc_prob,
                          bool unit_costs = true) {
  std::vector<Edge> edges;
  EdgeId next = 0;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      if (i == j) continue;
      if (rng.uniform() < arc_prob) {
        const double cost = unit_costs ? 1.0 : 0.5 + 1.5 * rng.uniform();
        edges.push_back(Edge{next++, i, j, cost, 0.0});
      }
    }
  }
  return Graph(n, std::move(edges));
}

// Small instance with softmax (non-retreating) chains built by the instance
// assembler; per-edge efficiencies redrawn uniformly afterwards.
inline ProblemInstance random_dag_instance(Rng& rng, NodeId max_nodes,
                                           std::int32_t budget,
                                           std::int32_t evaders = 1,
                                           bool mixed_efficiency = true) {
  for (;;) {
    const NodeId n = static_cast<NodeId>(rng.uniform_int(4, max_nodes));
    const double density = 0.2 + 0.3 * rng.uniform();
    Graph g = random_graph(rng, n, density, rng.uniform() < 0.5);
    if (g.edge_count() < budget || g.edge_count() == 0) continue;
    InstanceConfig cfg;
    for (std::int32_t k = 0; k < evaders; ++k) {
      const double pick = rng.uniform();
      cfg.lambdas.push_back(pick < 0.34 ? 0.1 : pick < 0.67 ? 1.0 : 1000.0);
    }
    cfg.d_uniform = 0.5;
    cfg.budget = budget;
    cfg.seed = rng.next_u64();
    cfg.unit_costs = false;  // keep whatever the graph has
    try {
      ProblemInstance p = make_instance(g, cfg);
      if (mixed_efficiency) {
        std::vector<Edge> edges = p.graph.edges();
        for (Edge& e : edges) e.efficiency = rng.uniform();
        p.graph = Graph(p.graph.node_count(), std::move(edges));
      }
      return p;
    } catch (const DataError&) {
      continue;  // e.g. unlucky target draw; resample the graph
    }
  }
}

// Instance with explicit (possibly cyclic) absorbing chains: rows are random
// sub-stochastic mixtures, nodes that cannot reach the target become dead
// ends.
inline ProblemInstance random_cyclic_instance(Rng& rng, NodeId max_nodes,
                                              std::int32_t budget,
                                              std::int32_t evaders = 1) {
  for (;;) {
    const NodeId n = static_cast<NodeId>(rng.uniform_int(4, max_nodes));
    Graph base = random_graph(rng, n, 0.3 + 0.2 * rng.uniform());
    if (base.edge_count() < std::max(budget, 1)) continue;
    std::vector<Edge> edges = base.edges();
    for (Edge& e : edges) e.efficiency = rng.uniform();
    Graph g(n, std::move(edges));

    ProblemInstance p;
    p.budget = budget;
    bool ok = true;
    std::vector<EvaderSpec> specs;
    for (std::int32_t k = 0; k < evaders && ok; ++k) {
      const NodeId target = static_cast<NodeId>(rng.uniform_int(0, n - 1));
      std::vector<double> probs(g.edge_count(), 0.0);
      for (NodeId i = 0; i < n; ++i) {
        if (i == target) continue;
        double total = 0.0;
        std::vector<EdgeId> outs;
        for (EdgeId e : g.out_edges(i)) {
          if (rng.uniform() < 0.8) {
            probs[e] = 0.05 + rng.uniform();
            total += probs[e];
            outs.push_back(e);
          }
        }
        if (outs.empty()) continue;
        const double row_sum = 0.5 + 0.5 * rng.uniform();  // in (0.5, 1]
        for (EdgeId e : outs) probs[e] *= row_sum / total;
      }
      // Nodes that cannot reach the target must be dead ends.
      TransitionMatrix draft(g, probs);
      const std::vector<bool> reach = reaches_target(draft, target);
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!reach[g.edge(e).tail]) probs[e] = 0.0;
      }
      EvaderSpec ev;
      ev.matrix = TransitionMatrix(g, probs);
      ev.target = target;
      std::vector<NodeId> candidates;
      for (NodeId i = 0; i < n; ++i) {
        if (reach[i] && i != target) candidates.push_back(i);
      }
      if (candidates.empty()) {
        ok = false;
        break;
      }
      const double mass = 1.0 / static_cast<double>(candidates.size());
      for (NodeId i : candidates) ev.source.emplace_back(i, mass);
      ev.weight = 1.0 / static_cast<double>(evaders);
      specs.push_back(std::move(ev));
    }
    if (!ok) continue;
    p.graph = std::move(g);
    p.evaders = std::move(specs);
    try {
      p.validate();
    } catch (const DataError&) {
      continue;
    }
    return p;
  }
}

// Distinct random edge ids, ascending.
inline std::vector<EdgeId> random_edge_subset(Rng& rng, EdgeId edge_count,
                                              std::size_t size) {
  std::vector<EdgeId> ids(edge_count);
  for (EdgeId e = 0; e < edge_count; ++e) ids[e] = e;
  for (std::size_t i = 0; i < size && i + 1 < ids.size(); ++i) {
    const std::size_t j =
        i + static_cast<std::size_t>(
                rng.uniform_int(0, static_cast<std::int64_t>(ids.size() - i) - 1));
    std::swap(ids[i], ids[j]);
  }
  ids.resize(std::min(size, ids.size()));
  std::sort(ids.begin(), ids.end());
  return ids;
}

// Independent visit-count oracle: truncated Neumann series a * sum_k M^k.
inline std::vector<double> neumann_visits(const std::vector<double>& a,
                                          const TransitionMatrix& m,
                                          int iterations = 400) {
  std::vector<double> total = a;
  std::vector<double> layer = a;
  std::vector<double> next(a.size());
  for (int it = 0; it < iterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (NodeId i = 0; i < m.node_count(); ++i) {
      if (layer[i] == 0.0) continue;
      for (const auto& e : m.row(i)) next[e.head] += layer[i] * e.prob;
    }
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += next[i];
    layer.swap(next);
  }
  return total;
}

}  // namespace ume::test
