#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "ume/instance.hpp"

namespace ume {

// Expected number of visits to each node before absorption: pi solving
// pi (I - M) = a. One sparse direct solve of the transposed system; no
// explicit inverse. Throws NumericalError ("non-absorbing chain") when the
// residual cannot be brought below 1e-6.
using VisitVector = std::vector<double>;
VisitVector expected_visits(std::span<const double> source,
                            const TransitionMatrix& m,
                            double tolerance = 1e-9);

// 1 - pi_t for the evader's chain under interdiction set s.
double evader_objective(const EvaderSpec& evader, const InterdictionSet& s,
                        const Graph& g, double tolerance = 1e-9);

// Weighted capture probability J = sum_k w_k J_k.
double objective(const ProblemInstance& p, const InterdictionSet& s);

// Source mass placed on nodes from which the target is unreachable.
double unreachable_mass(const EvaderSpec& evader);

// Evaluation engine shared by the solvers. Per-evader structures (in-edge
// CSR, topological order, dense sources) are built once; an interdiction
// state is a per-edge survival-factor vector, so candidate edges can be
// toggled without rebuilding matrices. Workspaces make concurrent candidate
// evaluation safe; the per-evader solve counter is the only shared mutable
// state and is atomic.
class Evaluator {
 public:
  struct Workspace {
    std::vector<double> factor;  // per edge: 1, or 1 - d once interdicted
    std::vector<double> pi;      // per node solve buffer
  };

  explicit Evaluator(const ProblemInstance& p);
  ~Evaluator();
  Evaluator(const Evaluator&) = delete;
  Evaluator& operator=(const Evaluator&) = delete;

  Workspace make_workspace() const;
  void set_edge(Workspace& ws, EdgeId e, bool interdicted) const;
  void load_set(Workspace& ws, const InterdictionSet& s) const;
  void clear(Workspace& ws) const;

  // J for the workspace's interdiction state. Counts one evaluation per
  // evader unless count is false.
  double evaluate(Workspace& ws, bool count = true) const;

  // Delta(empty, x) for every edge into gains (resized to |E|), from one
  // expected-visits solve per evader (counted). Returns J(empty) computed
  // from the same solves. The workspace must be clear.
  double fast_init(Workspace& ws, std::vector<double>& gains) const;

  double weighted_unreachable() const { return weighted_unreachable_; }
  // True when every evader chain is a DAG (each edge traversed at most once),
  // which makes fast_init exact rather than an upper bound.
  bool non_retreating() const { return all_dag_; }

  std::int64_t eval_count() const { return eval_count_.load(); }
  void reset_eval_count() { eval_count_.store(0); }

  const ProblemInstance& problem() const { return problem_; }

 private:
  struct PreparedEvader;
  double solve_reach(const PreparedEvader& pe, Workspace& ws) const;

  const ProblemInstance& problem_;
  std::vector<PreparedEvader> evaders_;
  double weighted_unreachable_ = 0.0;
  bool all_dag_ = true;
  mutable std::atomic<std::int64_t> eval_count_{0};
};

}  // namespace ume
