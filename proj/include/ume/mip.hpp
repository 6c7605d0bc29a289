#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ume/instance.hpp"

namespace ume {

// One linear constraint: sum of terms (var, coef) <sense> rhs,
// sense 'E' (==) or 'G' (>=).
struct LinearRow {
  std::string name;
  std::vector<std::pair<std::string, double>> terms;
  char sense = 'E';
  double rhs = 0.0;
};

// The interdiction MIP: minimize H = sum_k w_k pi_{t_k} subject to per-node
// flow balance, two dominance inequalities per (evader, edge), and the
// budget row. Variables: r_e{id} binary, pi_k{k}_n{i} >= 0, th_k{k}_e{id} >= 0.
struct MipModel {
  std::vector<std::pair<std::string, double>> objective;  // minimized
  std::vector<LinearRow> rows;
  std::vector<std::string> binaries;
  std::vector<std::string> continuous;                    // declaration order
  std::vector<std::pair<std::string, double>> upper_bounds;
};

struct MipOptions {
  bool budget_inequality = false;  // emit sum r <= B instead of == B
  bool pi_upper_bounds = false;    // add pi <= 1 (valid for non-retreating chains)
};

MipModel build_mip(const ProblemInstance& p, const MipOptions& opts = {});

// CPLEX-LP dialect text: Minimize / Subject To / Bounds / Binaries / End,
// deterministic ordering, coefficients printed exactly re-parseable.
std::string write_lp(const MipModel& model);

// Parses the dialect written by write_lp back into a model; used to verify
// the export reproduces the coefficient matrix exactly.
MipModel parse_lp(const std::string& text);

inline std::string export_mip(const ProblemInstance& p,
                              const MipOptions& opts = {}) {
  return write_lp(build_mip(p, opts));
}

struct MipCheckReport {
  bool ok = false;
  double h_value = 0.0;      // sum_k w_k pi_{t_k} under the given r
  double objective_j = 0.0;  // core objective for the same r
  double max_violation = 0.0;
  std::vector<std::string> violations;
};

// For a feasible indicator r (|r| must equal the budget): computes pi from
// the interdicted linear system, theta as the dominance maximum, verifies
// every exported constraint within tolerance and H(r) = 1 - J(r) within 1e-8.
MipCheckReport check_mip_solution(const ProblemInstance& p,
                                  std::span<const EdgeId> interdicted,
                                  double tolerance = 1e-8,
                                  const MipOptions& opts = {});

}  // namespace ume
