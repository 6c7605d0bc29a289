#include "ume/solvers.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <thread>

#include "ume/errors.hpp"

namespace ume {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct GainEntryLater {
  // std::priority_queue comparator: true when a pops after b.
  bool operator()(const GainEntry& a, const GainEntry& b) const {
    return gain_entry_before(b, a);
  }
};

// Gains of every edge not in S, evaluated against the workspace state; the
// candidate survival factor is toggled in place around each solve.
void evaluate_candidates(const Evaluator& ev, const InterdictionSet& s,
                         Evaluator::Workspace& ws, int threads,
                         std::vector<double>& objective_with) {
  const EdgeId m = ev.problem().graph.edge_count();
  objective_with.assign(m, std::numeric_limits<double>::quiet_NaN());
  if (threads <= 1) {
    for (EdgeId x = 0; x < m; ++x) {
      if (s.contains(x)) continue;
      ev.set_edge(ws, x, true);
      objective_with[x] = ev.evaluate(ws);
      ev.set_edge(ws, x, false);
    }
    return;
  }
  std::atomic<EdgeId> cursor{0};
  auto worker = [&]() {
    Evaluator::Workspace local = ws;
    for (;;) {
      const EdgeId x = cursor.fetch_add(1);
      if (x >= m) break;
      if (s.contains(x)) continue;
      ev.set_edge(local, x, true);
      objective_with[x] = ev.evaluate(local);
      ev.set_edge(local, x, false);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace

bool gain_entry_before(const GainEntry& a, const GainEntry& b) {
  if (a.gain != b.gain) return a.gain > b.gain;
  return a.edge < b.edge;
}

double marginal_gain(const ProblemInstance& p, const InterdictionSet& s,
                     EdgeId x) {
  if (s.contains(x)) {
    throw DataError("edge " + std::to_string(x) + " is already interdicted");
  }
  Evaluator ev(p);
  auto ws = ev.make_workspace();
  ev.load_set(ws, s);
  const double j_base = ev.evaluate(ws, /*count=*/false);
  ev.set_edge(ws, x, true);
  return ev.evaluate(ws) - j_base;
}

Solution greedy_solve(const ProblemInstance& p, const SolveOptions& opts) {
  const EdgeId m = p.graph.edge_count();
  if (p.budget > m) throw DataError("budget exceeds edge count");
  const auto t0 = Clock::now();

  Evaluator ev(p);
  auto ws = ev.make_workspace();
  double j = ev.evaluate(ws, /*count=*/false);  // J(empty), not counted

  Solution sol;
  sol.solver = "greedy";
  InterdictionSet s(m);
  std::vector<double> objective_with;
  for (std::int32_t step = 0; step < p.budget; ++step) {
    evaluate_candidates(ev, s, ws, opts.threads, objective_with);
    EdgeId best = -1;
    double best_gain = -1.0;
    for (EdgeId x = 0; x < m; ++x) {
      if (std::isnan(objective_with[x])) continue;
      const double gain = objective_with[x] - j;
      if (gain > best_gain) {
        best_gain = gain;
        best = x;
      }
    }
    if (best < 0) break;  // no candidates left
    if (opts.early_stop && best_gain <= 0.0) break;
    s.add(best);
    ev.set_edge(ws, best, true);
    j += best_gain;
    sol.selected.push_back(best);
    sol.gains.push_back(best_gain);
  }
  sol.objective = j;
  sol.eval_count = ev.eval_count();
  sol.wall_time = seconds_since(t0);
  return sol;
}

Solution priority_greedy_solve(const ProblemInstance& p,
                               const SolveOptions& opts) {
  const EdgeId m = p.graph.edge_count();
  if (p.budget > m) throw DataError("budget exceeds edge count");
  const auto t0 = Clock::now();

  Evaluator ev(p);
  auto ws = ev.make_workspace();

  Solution sol;
  sol.solver = "priority";
  if (p.budget == 0) {
    sol.objective = ev.evaluate(ws, /*count=*/false);
    sol.wall_time = seconds_since(t0);
    return sol;
  }

  std::vector<double> init_gains;
  double j = ev.fast_init(ws, init_gains);  // counts one solve per evader

  // Fast-init gains are exact marginal gains on non-retreating chains, so
  // they may be accepted at step 1 without recomputation. On general chains
  // they are only upper bounds and must enter the queue stale.
  const std::int32_t init_stamp = ev.non_retreating() ? 1 : 0;
  std::priority_queue<GainEntry, std::vector<GainEntry>, GainEntryLater> queue;
  for (EdgeId x = 0; x < m; ++x) {
    queue.push(GainEntry{init_gains[x], x, init_stamp});
  }

  InterdictionSet s(m);
  bool stopped = false;
  for (std::int32_t step = 1; step <= p.budget && !stopped; ++step) {
    for (;;) {
      const GainEntry top = queue.top();
      queue.pop();
      if (top.stamp == step) {
        if (opts.early_stop && top.gain <= 0.0) {
          stopped = true;
          break;
        }
        s.add(top.edge);
        ev.set_edge(ws, top.edge, true);
        j += top.gain;
        sol.selected.push_back(top.edge);
        sol.gains.push_back(top.gain);
        break;
      }
      ev.set_edge(ws, top.edge, true);
      const double j_with = ev.evaluate(ws);
      ev.set_edge(ws, top.edge, false);
      queue.push(GainEntry{j_with - j, top.edge, step});
    }
  }
  sol.objective = j;
  sol.eval_count = ev.eval_count();
  sol.wall_time = seconds_since(t0);
  return sol;
}

Solution brute_force_solve(const ProblemInstance& p,
                           std::int64_t max_combinations, bool at_most) {
  const EdgeId m = p.graph.edge_count();
  const std::int32_t b = p.budget;
  if (b > m) throw DataError("budget exceeds edge count");

  auto combinations = [&](std::int32_t k) -> std::int64_t {
    long double c = 1.0L;
    for (std::int32_t i = 0; i < k; ++i) {
      c = c * static_cast<long double>(m - i) / static_cast<long double>(i + 1);
      if (c > 4e18L) return std::numeric_limits<std::int64_t>::max();
    }
    return static_cast<std::int64_t>(c + 0.5L);
  };
  std::int64_t total = 0;
  for (std::int32_t k = at_most ? 0 : b; k <= b; ++k) {
    total += combinations(k);
    if (total > max_combinations) {
      throw DataError("combination count exceeds max_combinations (" +
                      std::to_string(max_combinations) + ")");
    }
  }

  const auto t0 = Clock::now();
  Evaluator ev(p);
  auto ws = ev.make_workspace();

  double best_j = -std::numeric_limits<double>::infinity();
  std::vector<EdgeId> best_set;
  std::vector<EdgeId> combo;
  for (std::int32_t k = at_most ? 0 : b; k <= b; ++k) {
    combo.resize(k);
    for (std::int32_t i = 0; i < k; ++i) combo[i] = i;
    for (;;) {
      for (EdgeId e : combo) ev.set_edge(ws, e, true);
      const double j = ev.evaluate(ws);
      for (EdgeId e : combo) ev.set_edge(ws, e, false);
      if (j > best_j) {  // strict: lexicographically first maximizer wins
        best_j = j;
        best_set.assign(combo.begin(), combo.end());
      }
      // next combination in lexicographic order
      std::int32_t i = k - 1;
      while (i >= 0 && combo[i] == m - k + i) --i;
      if (i < 0) break;
      ++combo[i];
      for (std::int32_t l = i + 1; l < k; ++l) combo[l] = combo[l - 1] + 1;
    }
  }

  Solution sol;
  sol.solver = "exact";
  sol.selected = std::move(best_set);
  sol.objective = best_j;
  sol.eval_count = ev.eval_count();
  sol.wall_time = seconds_since(t0);
  return sol;
}

std::vector<std::pair<EdgeId, double>> fast_init_gains(
    const ProblemInstance& p) {
  Evaluator ev(p);
  auto ws = ev.make_workspace();
  std::vector<double> gains;
  ev.fast_init(ws, gains);
  std::vector<std::pair<EdgeId, double>> out;
  out.reserve(gains.size());
  for (EdgeId x = 0; x < static_cast<EdgeId>(gains.size()); ++x) {
    out.emplace_back(x, gains[x]);
  }
  return out;
}

BoundReport verify_bound(const Solution& greedy, const Solution& exact) {
  BoundReport report;
  report.greedy_objective = greedy.objective;
  report.exact_objective = exact.objective;
  report.ratio =
      exact.objective > 0.0 ? greedy.objective / exact.objective : 1.0;
  constexpr double kTol = 1e-9;
  report.ok =
      greedy.objective >= (1.0 - 1.0 / std::exp(1.0)) * exact.objective - kTol;
  return report;
}

}  // namespace ume
