#pragma once

#include <span>
#include <string>
#include <vector>

#include "ume/graph.hpp"

namespace ume {

class InterdictionSet;

// Row-sparse Markov transition matrix supported on the edges of a Graph.
// Entries are grouped by tail node with heads ascending inside a row, and
// every entry remembers the graph edge it lives on.
class TransitionMatrix {
 public:
  struct Entry {
    NodeId head;
    EdgeId edge;
    double prob;
  };

  TransitionMatrix() = default;
  // prob_by_edge[e] = M_ij for edge e = (i, j); zeros are dropped. Negative
  // probabilities or values above 1 + 1e-12 are rejected.
  TransitionMatrix(const Graph& g, std::span<const double> prob_by_edge);

  NodeId node_count() const { return node_count_; }
  std::span<const Entry> row(NodeId i) const;
  double row_sum(NodeId i) const;
  std::size_t entry_count() const { return entries_.size(); }
  std::span<const Entry> entries() const { return entries_; }

  // Dense per-edge view, zeros where the chain has no entry.
  std::vector<double> to_edge_probs(EdgeId edge_count) const;

 private:
  NodeId node_count_ = 0;
  std::vector<std::int32_t> row_offsets_;
  std::vector<Entry> entries_;
};

// Non-retreating parametric chain: from node i moves are allowed only to
// out-neighbors j strictly closer to the target under least-cost distance D
// (D(t) = 0), with weight exp(-(c_ij + D(j) - D(i)) / lambda) normalized over
// the allowed moves. Rows of the target and of nodes with no allowed move are
// zero. Small lambda concentrates on least-cost paths; large lambda spreads
// uniformly over progress-making moves.
TransitionMatrix build_evader_transition(const Graph& g, NodeId target,
                                         double lambda);

struct ChainReport {
  std::vector<double> row_sums;
  std::vector<NodeId> unreachable;  // Z: nodes that cannot reach the target
  bool target_row_zero = true;
  bool row_sums_ok = true;
  bool entries_ok = true;
  bool absorbing_ok = true;  // every Z node is a dead end (all-zero row)
  bool support_ok = true;    // only checked when a graph is supplied
  std::vector<std::string> failures;

  bool pass() const {
    return target_row_zero && row_sums_ok && entries_ok && absorbing_ok &&
           support_ok;
  }
};

// Pure report: per-row sums, the unreachable set Z, and pass/fail of the
// matrix invariants. Never throws; the caller decides what to reject.
ChainReport validate_chain(const TransitionMatrix& m, NodeId target,
                           const Graph* graph = nullptr);

// M_hat_ij = M_ij * (1 - d_ij) on interdicted edges, M_ij elsewhere.
// Input is never mutated. Throws DataError if the set holds an edge id the
// graph does not.
TransitionMatrix apply_interdiction(const TransitionMatrix& m,
                                    const InterdictionSet& s, const Graph& g);

// reaches[i] is true when the target is reachable from i through positive
// entries (the target itself counts as reaching).
std::vector<bool> reaches_target(const TransitionMatrix& m, NodeId target);

}  // namespace ume
