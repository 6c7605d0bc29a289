#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ume/evaluator.hpp"
#include "ume/instance.hpp"

namespace ume {

struct Solution {
  std::string solver;
  std::vector<EdgeId> selected;  // selection order preserved
  std::vector<double> gains;     // realized Delta per step
  double objective = 0.0;
  std::int64_t eval_count = 0;   // per-evader linear solves
  double wall_time = 0.0;        // seconds
};

// Priority-queue element of the lazy greedy: gain computed at step `stamp`.
// Ordering: gain descending, then edge id ascending.
struct GainEntry {
  double gain;
  EdgeId edge;
  std::int32_t stamp;
};
bool gain_entry_before(const GainEntry& a, const GainEntry& b);

struct SolveOptions {
  bool early_stop = false;  // stop when the best gain is <= 0 (off: spend the budget)
  int threads = 1;          // concurrent candidate evaluation in basic greedy
};

// J(S + {x}) - J(S). Counts |evaders| evaluations; J(S) itself is computed
// uncounted (within the solvers it is cached per step, never recounted).
double marginal_gain(const ProblemInstance& p, const InterdictionSet& s,
                     EdgeId x);

// Basic greedy: B steps, each evaluating every uninterdicted edge, argmax
// gain with lowest-edge-id tie break. eval_count is exactly
// |K| * (B|E| - B(B-1)/2).
Solution greedy_solve(const ProblemInstance& p, const SolveOptions& opts = {});

// Lazy priority greedy with fast initialization. Returns the identical
// selection sequence and objective as greedy_solve; eval_count is |K| for the
// fast init plus |K| per recomputed stale entry.
Solution priority_greedy_solve(const ProblemInstance& p,
                               const SolveOptions& opts = {});

// Exhaustive search over size-B subsets (or all sizes <= B when at_most).
// Ties broken lexicographically. Throws DataError when the combination count
// exceeds max_combinations.
Solution brute_force_solve(const ProblemInstance& p,
                           std::int64_t max_combinations = 2'000'000,
                           bool at_most = false);

// Delta(empty, x) for every edge from one expected-visits solve per evader:
// sum_k w_k * visits_k[tail(x)] * M_k[x] * d_x. Exact for non-retreating
// chains, an upper bound otherwise.
std::vector<std::pair<EdgeId, double>> fast_init_gains(
    const ProblemInstance& p);

struct BoundReport {
  double greedy_objective = 0.0;
  double exact_objective = 0.0;
  double ratio = 1.0;
  bool ok = false;
};

// Checks greedy.objective >= (1 - 1/e) * exact.objective - 1e-9.
BoundReport verify_bound(const Solution& greedy, const Solution& exact);

}  // namespace ume
