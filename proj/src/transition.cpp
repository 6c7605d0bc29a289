#include "ume/transition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "ume/errors.hpp"
#include "ume/instance.hpp"

namespace ume {

namespace {
constexpr double kRowSumSlack = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TransitionMatrix::TransitionMatrix(const Graph& g,
                                   std::span<const double> prob_by_edge)
    : node_count_(g.node_count()) {
  if (static_cast<EdgeId>(prob_by_edge.size()) != g.edge_count()) {
    throw DataError("probability array size does not match edge count");
  }
  row_offsets_.assign(node_count_ + 1, 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const double p = prob_by_edge[e];
    if (std::isnan(p) || p < 0.0 || p > 1.0 + kRowSumSlack) {
      throw DataError("transition probability on edge " + std::to_string(e) +
                      " outside [0, 1]");
    }
    if (p > 0.0) ++row_offsets_[g.edge(e).tail + 1];
  }
  for (NodeId i = 0; i < node_count_; ++i) row_offsets_[i + 1] += row_offsets_[i];
  entries_.resize(row_offsets_.back());
  std::vector<std::int32_t> next(row_offsets_.begin(), row_offsets_.end() - 1);
  // Graph edges are id-ordered, not head-ordered; fill then sort each row.
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const double p = prob_by_edge[e];
    if (p > 0.0) {
      const Edge& ed = g.edge(e);
      entries_[next[ed.tail]++] = Entry{ed.head, e, p};
    }
  }
  for (NodeId i = 0; i < node_count_; ++i) {
    std::sort(entries_.begin() + row_offsets_[i],
              entries_.begin() + row_offsets_[i + 1],
              [](const Entry& a, const Entry& b) { return a.head < b.head; });
  }
}

std::span<const TransitionMatrix::Entry> TransitionMatrix::row(NodeId i) const {
  return {entries_.data() + row_offsets_[i],
          static_cast<std::size_t>(row_offsets_[i + 1] - row_offsets_[i])};
}

double TransitionMatrix::row_sum(NodeId i) const {
  double s = 0.0;
  for (const Entry& e : row(i)) s += e.prob;
  return s;
}

std::vector<double> TransitionMatrix::to_edge_probs(EdgeId edge_count) const {
  std::vector<double> probs(edge_count, 0.0);
  for (const Entry& e : entries_) probs[e.edge] = e.prob;
  return probs;
}

TransitionMatrix build_evader_transition(const Graph& g, NodeId target,
                                         double lambda) {
  if (target < 0 || target >= g.node_count()) {
    throw DataError("target node " + std::to_string(target) + " missing");
  }
  if (!(lambda > 0.0) || std::isnan(lambda)) {
    throw DataError("lambda must be positive");
  }
  for (const Edge& e : g.edges()) {
    if (std::isnan(e.cost)) throw DataError("NaN edge cost");
  }

  // Least-cost distance to the target: Dijkstra over reversed edges.
  std::vector<double> dist(g.node_count(), kInf);
  dist[target] = 0.0;
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.emplace(0.0, target);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (EdgeId e : g.in_edges(v)) {
      const Edge& ed = g.edge(e);
      const double nd = d + ed.cost;
      if (nd < dist[ed.tail]) {
        dist[ed.tail] = nd;
        heap.emplace(nd, ed.tail);
      }
    }
  }

  std::vector<double> probs(g.edge_count(), 0.0);
  std::vector<EdgeId> allowed;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    if (i == target || dist[i] == kInf) continue;
    allowed.clear();
    double min_slack = kInf;
    for (EdgeId e : g.out_edges(i)) {
      const Edge& ed = g.edge(e);
      if (dist[ed.head] < dist[i]) {
        allowed.push_back(e);
        min_slack = std::min(min_slack, ed.cost + dist[ed.head] - dist[i]);
      }
    }
    if (allowed.empty()) continue;  // dead end: zero row
    double total = 0.0;
    for (EdgeId e : allowed) {
      const Edge& ed = g.edge(e);
      const double slack = ed.cost + dist[ed.head] - dist[i];  // >= 0
      const double w = std::exp(-(slack - min_slack) / lambda);
      probs[e] = w;
      total += w;
    }
    for (EdgeId e : allowed) probs[e] /= total;
  }
  return TransitionMatrix(g, probs);
}

std::vector<bool> reaches_target(const TransitionMatrix& m, NodeId target) {
  const NodeId n = m.node_count();
  // In-adjacency over positive entries.
  std::vector<std::int32_t> in_count(n + 1, 0);
  for (const auto& e : m.entries()) ++in_count[e.head + 1];
  for (NodeId i = 0; i < n; ++i) in_count[i + 1] += in_count[i];
  std::vector<NodeId> in_tails(m.entry_count());
  {
    std::vector<std::int32_t> next(in_count.begin(), in_count.end() - 1);
    for (NodeId i = 0; i < n; ++i) {
      for (const auto& e : m.row(i)) in_tails[next[e.head]++] = i;
    }
  }
  std::vector<bool> reach(n, false);
  std::vector<NodeId> stack;
  if (target >= 0 && target < n) {
    reach[target] = true;
    stack.push_back(target);
  }
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (std::int32_t k = in_count[v]; k < in_count[v + 1]; ++k) {
      const NodeId u = in_tails[k];
      if (!reach[u]) {
        reach[u] = true;
        stack.push_back(u);
      }
    }
  }
  return reach;
}

ChainReport validate_chain(const TransitionMatrix& m, NodeId target,
                           const Graph* graph) {
  ChainReport report;
  const NodeId n = m.node_count();
  report.row_sums.resize(n);
  for (NodeId i = 0; i < n; ++i) {
    report.row_sums[i] = m.row_sum(i);
    if (report.row_sums[i] > 1.0 + kRowSumSlack) {
      report.row_sums_ok = false;
      report.failures.push_back("row " + std::to_string(i) + " sums to " +
                                std::to_string(report.row_sums[i]));
    }
    for (const auto& e : m.row(i)) {
      if (!(e.prob > 0.0) || e.prob > 1.0 + kRowSumSlack ||
          !std::isfinite(e.prob)) {
        report.entries_ok = false;
        report.failures.push_back("entry (" + std::to_string(i) + "," +
                                  std::to_string(e.head) + ") outside (0, 1]");
      }
    }
  }
  if (target < 0 || target >= n) {
    report.target_row_zero = false;
    report.failures.push_back("target node missing");
  } else if (!m.row(target).empty()) {
    report.target_row_zero = false;
    report.failures.push_back("target row nonzero");
  }

  const std::vector<bool> reach = reaches_target(m, target);
  for (NodeId i = 0; i < n; ++i) {
    if (i == target) continue;
    if (!reach[i]) {
      report.unreachable.push_back(i);
      if (!m.row(i).empty()) {
        report.absorbing_ok = false;
        report.failures.push_back("node " + std::to_string(i) +
                                  " cannot reach the target but is not a dead end");
      }
    }
  }

  if (graph != nullptr) {
    if (graph->node_count() != n) {
      report.support_ok = false;
      report.failures.push_back("node count differs from graph");
    } else {
      for (NodeId i = 0; i < n; ++i) {
        for (const auto& e : m.row(i)) {
          if (e.edge < 0 || e.edge >= graph->edge_count() ||
              graph->edge(e.edge).tail != i || graph->edge(e.edge).head != e.head) {
            report.support_ok = false;
            report.failures.push_back("entry (" + std::to_string(i) + "," +
                                      std::to_string(e.head) +
                                      ") not on a graph edge");
          }
        }
      }
    }
  }
  return report;
}

TransitionMatrix apply_interdiction(const TransitionMatrix& m,
                                    const InterdictionSet& s, const Graph& g) {
  std::vector<double> probs = m.to_edge_probs(g.edge_count());
  for (EdgeId e : s.selected()) {
    if (e < 0 || e >= g.edge_count()) {
      throw DataError("interdicted edge " + std::to_string(e) +
                      " absent from graph");
    }
    probs[e] *= 1.0 - g.edge(e).efficiency;
  }
  return TransitionMatrix(g, probs);
}

}  // namespace ume
