#include "ume/oracle.hpp"

#include <string>
#include <vector>

#include "ume/errors.hpp"

namespace ume {

namespace {

struct PathEnumerator {
  const TransitionMatrix& m;
  const Graph& g;
  const InterdictionSet& s;
  NodeId target;
  std::int64_t max_paths;
  std::int64_t paths_found = 0;
  double reach_mass = 0.0;     // sum_p Q(p)
  double survive_mass = 0.0;   // sum_p Q(p) * prod_{e in p and S} (1 - d_e)
  std::vector<std::uint8_t> on_path;

  // q = probability of the prefix, survive = q times the survival product.
  void visit(NodeId v, double q, double survive) {
    if (v == target) {
      if (++paths_found > max_paths) {
        throw DataError("path count exceeds max_paths (" +
                        std::to_string(max_paths) + ")");
      }
      reach_mass += q;
      survive_mass += survive;
      return;
    }
    if (on_path[v]) throw DataError("cycle detected: chain must be acyclic");
    on_path[v] = 1;
    for (const auto& e : m.row(v)) {
      const double q2 = q * e.prob;
      const double f =
          s.contains(e.edge) ? 1.0 - g.edge(e.edge).efficiency : 1.0;
      visit(e.head, q2, survive * e.prob * f);
    }
    on_path[v] = 0;
  }
};

}  // namespace

double path_objective_oracle(const EvaderSpec& evader, const InterdictionSet& s,
                             const Graph& g, std::int64_t max_paths) {
  PathEnumerator en{evader.matrix, g, s, evader.target, max_paths};
  en.on_path.assign(g.node_count(), 0);
  for (const auto& [node, a] : evader.source) {
    if (a > 0.0) en.visit(node, a, a);
  }
  // Captured along some path, plus the mass that never reaches the target
  // (dead ends and disconnected sources).
  return (en.reach_mass - en.survive_mass) + (1.0 - en.reach_mass);
}

}  // namespace ume
