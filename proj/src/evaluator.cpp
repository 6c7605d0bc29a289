#include "ume/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "ume/errors.hpp"
#include "ume/kernels.hpp"

namespace ume {

namespace {

constexpr double kResidualRefusal = 1e-6;

// In-edge CSR of a chain (entries grouped by head) plus a topological order
// when the positive support is acyclic. This is the solve-ready form of
// pi (I - M) = a: pi_v = a_v + sum over in-edges of pi_tail * prob.
struct ChainSolveData {
  NodeId n = 0;
  std::vector<std::int32_t> in_offsets;
  std::vector<std::int32_t> in_tails;
  std::vector<std::int32_t> in_edges;
  std::vector<double> in_probs;
  std::vector<NodeId> topo;
  bool dag = false;

  void build(const TransitionMatrix& m);
  // factor may be null (all ones). Returns pi via out.
  void solve(std::span<const double> a, const double* factor,
             std::vector<double>& out, double tolerance) const;
  double residual_inf(std::span<const double> a, const double* factor,
                      const std::vector<double>& pi) const;
};

void ChainSolveData::build(const TransitionMatrix& m) {
  n = m.node_count();
  in_offsets.assign(n + 1, 0);
  for (const auto& e : m.entries()) ++in_offsets[e.head + 1];
  for (NodeId i = 0; i < n; ++i) in_offsets[i + 1] += in_offsets[i];
  in_tails.resize(m.entry_count());
  in_edges.resize(m.entry_count());
  in_probs.resize(m.entry_count());
  std::vector<std::int32_t> next(in_offsets.begin(), in_offsets.end() - 1);
  for (NodeId i = 0; i < n; ++i) {
    for (const auto& e : m.row(i)) {
      const std::int32_t slot = next[e.head]++;
      in_tails[slot] = i;
      in_edges[slot] = e.edge;
      in_probs[slot] = e.prob;
    }
  }

  // Kahn's algorithm over the positive support.
  std::vector<std::int32_t> pending(n, 0);
  for (NodeId i = 0; i < n; ++i) {
    pending[i] = in_offsets[i + 1] - in_offsets[i];
  }
  topo.clear();
  topo.reserve(n);
  for (NodeId i = 0; i < n; ++i) {
    if (pending[i] == 0) topo.push_back(i);
  }
  for (std::size_t k = 0; k < topo.size(); ++k) {
    const NodeId v = topo[k];
    for (const auto& e : m.row(v)) {
      if (--pending[e.head] == 0) topo.push_back(e.head);
    }
  }
  dag = topo.size() == static_cast<std::size_t>(n);
}

double ChainSolveData::residual_inf(std::span<const double> a,
                                    const double* factor,
                                    const std::vector<double>& pi) const {
  const auto& ops = kernels::active();
  double worst = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    const std::int32_t off = in_offsets[v];
    const std::size_t len = in_offsets[v + 1] - off;
    const double flow =
        factor != nullptr
            ? ops.gather_dot3(pi.data(), in_tails.data() + off,
                              in_probs.data() + off, in_edges.data() + off,
                              factor, len)
            : ops.gather_dot2(pi.data(), in_tails.data() + off,
                              in_probs.data() + off, len);
    worst = std::max(worst, std::fabs(a[v] + flow - pi[v]));
  }
  return worst;
}

void ChainSolveData::solve(std::span<const double> a, const double* factor,
                           std::vector<double>& out, double tolerance) const {
  out.resize(n);
  const auto& ops = kernels::active();
  if (dag) {
    for (const NodeId v : topo) {
      const std::int32_t off = in_offsets[v];
      const std::size_t len = in_offsets[v + 1] - off;
      const double flow =
          factor != nullptr
              ? ops.gather_dot3(out.data(), in_tails.data() + off,
                                in_probs.data() + off, in_edges.data() + off,
                                factor, len)
              : ops.gather_dot2(out.data(), in_tails.data() + off,
                                in_probs.data() + off, len);
      out[v] = a[v] + flow;
    }
    return;
  }

  // General absorbing chain: sparse LU of (I - M)^T.
  Eigen::SparseMatrix<double> mat(n, n);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(in_probs.size() + n);
  for (NodeId i = 0; i < n; ++i) triplets.emplace_back(i, i, 1.0);
  for (NodeId v = 0; v < n; ++v) {
    for (std::int32_t k = in_offsets[v]; k < in_offsets[v + 1]; ++k) {
      const double p =
          factor != nullptr ? in_probs[k] * factor[in_edges[k]] : in_probs[k];
      if (p != 0.0) triplets.emplace_back(v, in_tails[k], -p);
    }
  }
  mat.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(mat);
  if (lu.info() != Eigen::Success) {
    throw NumericalError("non-absorbing chain: factorization failed");
  }
  Eigen::VectorXd rhs(n);
  for (NodeId i = 0; i < n; ++i) rhs[i] = a[i];
  Eigen::VectorXd x = lu.solve(rhs);
  for (NodeId i = 0; i < n; ++i) out[i] = x[i];

  double res = residual_inf(a, factor, out);
  if (res > tolerance) {  // one refinement step, then refuse
    Eigen::VectorXd r(n);
    const auto& kops = kernels::active();
    for (NodeId v = 0; v < n; ++v) {
      const std::int32_t off = in_offsets[v];
      const std::size_t len = in_offsets[v + 1] - off;
      const double flow =
          factor != nullptr
              ? kops.gather_dot3(out.data(), in_tails.data() + off,
                                 in_probs.data() + off, in_edges.data() + off,
                                 factor, len)
              : kops.gather_dot2(out.data(), in_tails.data() + off,
                                 in_probs.data() + off, len);
      r[v] = a[v] + flow - out[v];
    }
    Eigen::VectorXd dx = lu.solve(r);
    for (NodeId i = 0; i < n; ++i) out[i] += dx[i];
    res = residual_inf(a, factor, out);
  }
  if (res > kResidualRefusal) {
    throw NumericalError("non-absorbing chain: residual " +
                         std::to_string(res));
  }
}

double finish_objective(double reach, double tolerance) {
  const double j = 1.0 - reach;
  if (j < -tolerance || j > 1.0 + tolerance) {
    throw NumericalError("objective " + std::to_string(j) +
                         " outside [0, 1] beyond tolerance");
  }
  return std::clamp(j, 0.0, 1.0);
}

}  // namespace

VisitVector expected_visits(std::span<const double> source,
                            const TransitionMatrix& m, double tolerance) {
  if (static_cast<NodeId>(source.size()) != m.node_count()) {
    throw DataError("source vector length does not match node count");
  }
  ChainSolveData data;
  data.build(m);
  VisitVector pi;
  // Topological substitution is exact on DAG chains; the LU path checks and
  // refines its residual internally.
  data.solve(source, nullptr, pi, tolerance);
  return pi;
}

double evader_objective(const EvaderSpec& evader, const InterdictionSet& s,
                        const Graph& g, double tolerance) {
  const TransitionMatrix interdicted = apply_interdiction(evader.matrix, s, g);
  const std::vector<double> a = evader.dense_source(g.node_count());
  const VisitVector pi = expected_visits(a, interdicted, tolerance);
  return finish_objective(pi[evader.target], tolerance);
}

double objective(const ProblemInstance& p, const InterdictionSet& s) {
  Evaluator ev(p);
  Evaluator::Workspace ws = ev.make_workspace();
  ev.load_set(ws, s);
  return ev.evaluate(ws);
}

double unreachable_mass(const EvaderSpec& evader) {
  const std::vector<bool> reach = reaches_target(evader.matrix, evader.target);
  double mass = 0.0;
  for (const auto& [node, a] : evader.source) {
    if (node >= 0 && node < static_cast<NodeId>(reach.size()) && !reach[node]) {
      mass += a;
    }
  }
  return mass;
}

struct Evaluator::PreparedEvader {
  double weight = 0.0;
  NodeId target = 0;
  std::vector<double> a_dense;
  std::vector<double> probs_by_edge;  // fast-init gain kernel input
  ChainSolveData chain;
};

Evaluator::Evaluator(const ProblemInstance& p) : problem_(p) {
  evaders_.reserve(p.evaders.size());
  for (const EvaderSpec& ev : p.evaders) {
    PreparedEvader pe;
    pe.weight = ev.weight;
    pe.target = ev.target;
    pe.a_dense = ev.dense_source(p.graph.node_count());
    pe.probs_by_edge = ev.matrix.to_edge_probs(p.graph.edge_count());
    pe.chain.build(ev.matrix);
    all_dag_ = all_dag_ && pe.chain.dag;
    weighted_unreachable_ += ev.weight * unreachable_mass(ev);
    evaders_.push_back(std::move(pe));
  }
}

Evaluator::~Evaluator() = default;

Evaluator::Workspace Evaluator::make_workspace() const {
  Workspace ws;
  ws.factor.assign(problem_.graph.edge_count(), 1.0);
  ws.pi.assign(problem_.graph.node_count(), 0.0);
  return ws;
}

void Evaluator::set_edge(Workspace& ws, EdgeId e, bool interdicted) const {
  ws.factor[e] = interdicted ? 1.0 - problem_.graph.edge(e).efficiency : 1.0;
}

void Evaluator::load_set(Workspace& ws, const InterdictionSet& s) const {
  clear(ws);
  for (EdgeId e : s.selected()) {
    if (e < 0 || e >= problem_.graph.edge_count()) {
      throw DataError("interdicted edge " + std::to_string(e) +
                      " absent from graph");
    }
    set_edge(ws, e, true);
  }
}

void Evaluator::clear(Workspace& ws) const {
  std::fill(ws.factor.begin(), ws.factor.end(), 1.0);
}

double Evaluator::solve_reach(const PreparedEvader& pe, Workspace& ws) const {
  pe.chain.solve(pe.a_dense, ws.factor.data(), ws.pi, problem_.tolerance);
  return ws.pi[pe.target];
}

double Evaluator::evaluate(Workspace& ws, bool count) const {
  double j = 0.0;
  for (const PreparedEvader& pe : evaders_) {
    const double reach = solve_reach(pe, ws);
    if (count) eval_count_.fetch_add(1, std::memory_order_relaxed);
    j += pe.weight * finish_objective(reach, problem_.tolerance);
  }
  return j;
}

double Evaluator::fast_init(Workspace& ws, std::vector<double>& gains) const {
  const Graph& g = problem_.graph;
  gains.assign(g.edge_count(), 0.0);
  // Edge-aligned tail and efficiency arrays for the gain kernel.
  std::vector<std::int32_t> tails(g.edge_count());
  std::vector<double> eff(g.edge_count());
  for (const Edge& e : g.edges()) {
    tails[e.id] = e.tail;
    eff[e.id] = e.efficiency;
  }
  const auto& ops = kernels::active();
  double j_empty = 0.0;
  for (const PreparedEvader& pe : evaders_) {
    const double reach = solve_reach(pe, ws);
    eval_count_.fetch_add(1, std::memory_order_relaxed);
    j_empty += pe.weight * finish_objective(reach, problem_.tolerance);
    ops.gain_accum(gains.data(), ws.pi.data(), tails.data(),
                   pe.probs_by_edge.data(), eff.data(), pe.weight,
                   gains.size());
  }
  return j_empty;
}

}  // namespace ume
