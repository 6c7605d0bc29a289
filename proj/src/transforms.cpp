#include "ume/transforms.hpp"

#include <cmath>
#include <string>

#include "ume/errors.hpp"
#include "ume/evaluator.hpp"

namespace ume {

void NodeProblem::validate() const {
  if (budget < 0 || budget > graph.node_count()) {
    throw DataError("node budget must be in [0, node count]");
  }
  if (static_cast<NodeId>(node_efficiency.size()) != graph.node_count()) {
    throw DataError("node efficiency table size does not match node count");
  }
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    if (!(node_efficiency[v] >= 0.0 && node_efficiency[v] <= 1.0)) {
      throw DataError("node " + std::to_string(v) +
                      " efficiency must be in [0, 1]");
    }
  }
  if (evaders.empty()) throw DataError("node problem has no evaders");
  double weight_sum = 0.0;
  for (std::size_t k = 0; k < evaders.size(); ++k) {
    const EvaderSpec& ev = evaders[k];
    const std::string tag = "evader " + std::to_string(k);
    if (!(ev.weight > 0.0 && ev.weight <= 1.0)) {
      throw DataError(tag + " weight must be in (0, 1]");
    }
    weight_sum += ev.weight;
    if (ev.target < 0 || ev.target >= graph.node_count()) {
      throw DataError(tag + " target out of range");
    }
    double mass = 0.0;
    for (const auto& [node, a] : ev.source) {
      if (node < 0 || node >= graph.node_count()) {
        throw DataError(tag + " source node out of range");
      }
      if (!(a >= 0.0)) throw DataError(tag + " source mass must be >= 0");
      mass += a;
    }
    if (std::fabs(mass - 1.0) > 1e-12) {
      throw DataError(tag + " source distribution sums to " +
                      std::to_string(mass) + ", expected 1");
    }
    if (!ev.matrix.row(ev.target).empty()) {
      throw DataError(tag + " target row nonzero");
    }
    for (NodeId i = 0; i < graph.node_count(); ++i) {
      if (ev.matrix.row_sum(i) > 1.0 + 1e-12) {
        throw DataError(tag + " row " + std::to_string(i) + " exceeds 1");
      }
    }
  }
  if (std::fabs(weight_sum - 1.0) > 1e-12) {
    throw DataError("evader weights sum to " + std::to_string(weight_sum) +
                    ", expected 1");
  }
}

std::vector<std::int32_t> TransformMap::translate(
    std::span<const std::int32_t> ids) const {
  std::vector<std::int32_t> out;
  out.reserve(ids.size());
  for (std::int32_t id : ids) {
    if (id < 0 || id >= static_cast<std::int32_t>(forward.size())) {
      throw DataError("element " + std::to_string(id) + " has no image");
    }
    out.push_back(forward[id]);
  }
  return out;
}

std::vector<std::int32_t> TransformMap::translate_back(
    std::span<const std::int32_t> ids) const {
  std::vector<std::int32_t> out;
  out.reserve(ids.size());
  for (std::int32_t id : ids) {
    if (id < 0 || id >= static_cast<std::int32_t>(inverse.size()) ||
        inverse[id] < 0) {
      throw DataError("element " + std::to_string(id) +
                      " is not the image of an interdictable element");
    }
    out.push_back(inverse[id]);
  }
  return out;
}

double node_objective(const NodeProblem& p,
                      std::span<const NodeId> interdicted) {
  const NodeId n = p.graph.node_count();
  std::vector<std::uint8_t> hit(n, 0);
  for (NodeId v : interdicted) {
    if (v < 0 || v >= n) {
      throw DataError("interdicted node " + std::to_string(v) +
                      " absent from graph");
    }
    hit[v] = 1;
  }
  double j = 0.0;
  for (const EvaderSpec& ev : p.evaders) {
    std::vector<double> probs = ev.matrix.to_edge_probs(p.graph.edge_count());
    for (EdgeId e = 0; e < p.graph.edge_count(); ++e) {
      const NodeId head = p.graph.edge(e).head;
      if (hit[head]) probs[e] *= 1.0 - p.node_efficiency[head];
    }
    const TransitionMatrix scaled(p.graph, probs);
    const std::vector<double> a = ev.dense_source(n);
    const VisitVector pi = expected_visits(a, scaled, p.tolerance);
    const double reach = pi[ev.target];
    j += ev.weight * (1.0 - reach);
  }
  return j;
}

std::pair<NodeProblem, TransformMap> edge_problem_to_node_problem(
    const ProblemInstance& p) {
  const NodeId n = p.graph.node_count();
  const EdgeId m = p.graph.edge_count();

  // Split every edge e = (i, j) around an interdictable node v_e = n + e:
  // arc 2e is (i, v_e), arc 2e+1 is (v_e, j).
  std::vector<Edge> edges;
  edges.reserve(2 * static_cast<std::size_t>(m));
  for (const Edge& e : p.graph.edges()) {
    edges.push_back(Edge{2 * e.id, e.tail, n + e.id, e.cost, 0.0});
    edges.push_back(Edge{2 * e.id + 1, n + e.id, e.head, 0.0, 0.0});
  }

  NodeProblem np;
  np.graph = Graph(n + m, std::move(edges));
  np.node_efficiency.assign(n + m, 0.0);
  for (const Edge& e : p.graph.edges()) {
    np.node_efficiency[n + e.id] = e.efficiency;
  }
  np.budget = p.budget;
  np.tolerance = p.tolerance;
  np.evaders.reserve(p.evaders.size());
  for (const EvaderSpec& ev : p.evaders) {
    EvaderSpec out;
    out.weight = ev.weight;
    out.source = ev.source;  // original nodes keep their ids
    out.target = ev.target;
    std::vector<double> probs(2 * static_cast<std::size_t>(m), 0.0);
    for (const auto& entry : ev.matrix.entries()) {
      probs[2 * entry.edge] = entry.prob;
      probs[2 * entry.edge + 1] = 1.0;
    }
    out.matrix = TransitionMatrix(np.graph, probs);
    np.evaders.push_back(std::move(out));
  }

  TransformMap map;
  map.direction = TransformMap::Direction::kEdgeToNode;
  map.forward.resize(m);
  map.inverse.assign(n + m, -1);
  for (EdgeId e = 0; e < m; ++e) {
    map.forward[e] = n + e;
    map.inverse[n + e] = e;
  }
  return {std::move(np), std::move(map)};
}

std::pair<ProblemInstance, TransformMap> node_problem_to_edge_problem(
    const NodeProblem& p) {
  const NodeId n = p.graph.node_count();
  const EdgeId m = p.graph.edge_count();
  if (static_cast<NodeId>(p.node_efficiency.size()) != n) {
    throw DataError("node efficiency table size does not match node count");
  }

  // Node v becomes i(v) = v and j(v) = n + v joined by interdictable arc
  // id v; original arc e = (u, w) becomes (j(u), i(w)) with id n + e.
  // Arrivals enter i(v); departures, source mass, and targets live on j(v),
  // so only mass that actually arrives at v crosses the interdictable arc.
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) + m);
  for (NodeId v = 0; v < n; ++v) {
    const double d = p.node_efficiency[v];
    if (!(d >= 0.0 && d <= 1.0)) {
      throw DataError("node " + std::to_string(v) +
                      " efficiency must be in [0, 1]");
    }
    edges.push_back(Edge{v, v, n + v, 0.0, d});
  }
  for (const Edge& e : p.graph.edges()) {
    edges.push_back(Edge{n + e.id, n + e.tail, e.head, e.cost, 0.0});
  }

  ProblemInstance out;
  out.graph = Graph(2 * n, std::move(edges));
  out.budget = p.budget;
  out.tolerance = p.tolerance;
  out.evaders.reserve(p.evaders.size());
  for (const EvaderSpec& ev : p.evaders) {
    EvaderSpec t;
    t.weight = ev.weight;
    t.target = n + ev.target;
    t.source.reserve(ev.source.size());
    for (const auto& [node, a] : ev.source) t.source.emplace_back(n + node, a);
    std::vector<double> probs(static_cast<std::size_t>(n) + m, 0.0);
    for (NodeId v = 0; v < n; ++v) {
      if (!ev.matrix.row(v).empty() || v == ev.target) probs[v] = 1.0;
    }
    for (const auto& entry : ev.matrix.entries()) {
      probs[n + entry.edge] = entry.prob;
    }
    t.matrix = TransitionMatrix(out.graph, probs);
    out.evaders.push_back(std::move(t));
  }

  TransformMap map;
  map.direction = TransformMap::Direction::kNodeToEdge;
  map.forward.resize(n);
  map.inverse.assign(static_cast<std::size_t>(n) + m, -1);
  for (NodeId v = 0; v < n; ++v) {
    map.forward[v] = v;
    map.inverse[v] = v;
  }
  return {std::move(out), std::move(map)};
}

}  // namespace ume
