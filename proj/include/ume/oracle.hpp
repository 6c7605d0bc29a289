#pragma once

#include <cstdint>

#include "ume/instance.hpp"

namespace ume {

// Independent objective route by full path enumeration: sums, over every
// source-to-target path p, Q(p) * (1 - prod_{e in p and S} (1 - d_e)), plus
// the source mass that never reaches the target. Requires an acyclic chain
// and at most max_paths paths; throws DataError otherwise.
double path_objective_oracle(const EvaderSpec& evader, const InterdictionSet& s,
                             const Graph& g,
                             std::int64_t max_paths = 1'000'000);

}  // namespace ume
