#include "ume/kernels.hpp"

namespace ume::kernels {
namespace {

double gather_dot3_scalar(const double* x, const std::int32_t* tails,
                          const double* probs, const std::int32_t* edges,
                          const double* factor, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += x[tails[k]] * probs[k] * factor[edges[k]];
  }
  return acc;
}

double gather_dot2_scalar(const double* x, const std::int32_t* tails,
                          const double* probs, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += x[tails[k]] * probs[k];
  }
  return acc;
}

void gain_accum_scalar(double* g, const double* x, const std::int32_t* tails,
                       const double* probs, const double* eff, double scale,
                       std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    g[k] += scale * x[tails[k]] * probs[k] * eff[k];
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{"scalar", gather_dot3_scalar, gather_dot2_scalar,
                       gain_accum_scalar};
  return ops;
}

}  // namespace ume::kernels
