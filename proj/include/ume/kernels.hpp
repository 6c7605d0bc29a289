#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace ume::kernels {

// Inner loops of the evaluation pipeline. Scalar reference implementations
// and an AVX2 variant share these signatures; the active set is chosen at
// runtime from CPU capabilities (override with UME_KERNELS=scalar|avx2 or
// select()).

// sum_k x[tails[k]] * probs[k] * factor[edges[k]]
// One transition-matrix in-row dot with per-edge interdiction survival
// factors gathered by edge id.
using GatherDot3Fn = double (*)(const double* x, const std::int32_t* tails,
                                const double* probs, const std::int32_t* edges,
                                const double* factor, std::size_t n);

// sum_k x[tails[k]] * probs[k]
using GatherDot2Fn = double (*)(const double* x, const std::int32_t* tails,
                                const double* probs, std::size_t n);

// g[k] += scale * x[tails[k]] * probs[k] * eff[k]  over edge-aligned arrays
using GainAccumFn = void (*)(double* g, const double* x,
                             const std::int32_t* tails, const double* probs,
                             const double* eff, double scale, std::size_t n);

struct Ops {
  const char* name;
  GatherDot3Fn gather_dot3;
  GatherDot2Fn gather_dot2;
  GainAccumFn gain_accum;
};

const Ops& scalar_ops();

// nullptr when the build or the CPU lacks AVX2+FMA.
const Ops* avx2_ops();

// The runtime-selected table.
const Ops& active();

// Force a backend by name ("scalar", "avx2"); throws DataError if unavailable.
void select(std::string_view name);

}  // namespace ume::kernels
