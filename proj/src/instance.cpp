#include "ume/instance.hpp"

#include <cmath>
#include <string>

#include "ume/errors.hpp"

namespace ume {

namespace {
constexpr double kMassSlack = 1e-12;
}

std::vector<double> EvaderSpec::dense_source(NodeId node_count) const {
  std::vector<double> a(node_count, 0.0);
  for (const auto& [node, mass] : source) {
    if (node < 0 || node >= node_count) {
      throw DataError("source node " + std::to_string(node) + " out of range");
    }
    a[node] += mass;
  }
  return a;
}

InterdictionSet InterdictionSet::from_edges(std::span<const EdgeId> edges,
                                            EdgeId edge_count) {
  InterdictionSet s(edge_count);
  for (EdgeId e : edges) s.add(e);
  return s;
}

void InterdictionSet::add(EdgeId e) {
  if (e < 0 || e >= static_cast<EdgeId>(indicator_.size())) {
    throw DataError("edge id " + std::to_string(e) +
                    " outside the interdictable range");
  }
  if (indicator_[e]) {
    throw DataError("edge " + std::to_string(e) + " already interdicted");
  }
  indicator_[e] = 1;
  selected_.push_back(e);
}

void InterdictionSet::remove_last() {
  if (selected_.empty()) return;
  indicator_[selected_.back()] = 0;
  selected_.pop_back();
}

void ProblemInstance::validate() const {
  if (budget < 0) throw DataError("budget must be nonnegative");
  if (budget > graph.edge_count()) {
    throw DataError("budget " + std::to_string(budget) + " exceeds edge count " +
                    std::to_string(graph.edge_count()));
  }
  if (!(tolerance > 0.0)) throw DataError("tolerance must be positive");
  if (evaders.empty()) throw DataError("instance has no evaders");

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
    if (std::fabs(mass - 1.0) > kMassSlack) {
      throw DataError(tag + " source distribution sums to " +
                      std::to_string(mass) + ", expected 1");
    }
    const ChainReport report = validate_chain(ev.matrix, ev.target, &graph);
    if (!report.pass()) {
      throw DataError(tag + " chain invalid: " + report.failures.front());
    }
  }
  if (std::fabs(weight_sum - 1.0) > kMassSlack) {
    throw DataError("evader weights sum to " + std::to_string(weight_sum) +
                    ", expected 1");
  }
}

}  // namespace ume
