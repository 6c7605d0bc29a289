// AVX2 + FMA kernel variants. Compiled with -mavx2 -mfma on x86-64 only; the
// dispatcher checks CPU support before handing these out.

#include "ume/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace ume::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double gather_dot3_avx2(const double* x, const std::int32_t* tails,
                        const double* probs, const std::int32_t* edges,
                        const double* factor, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m128i ti = _mm_loadu_si128(reinterpret_cast<const __m128i*>(tails + k));
    __m128i ei = _mm_loadu_si128(reinterpret_cast<const __m128i*>(edges + k));
    __m256d xv = _mm256_i32gather_pd(x, ti, 8);
    __m256d fv = _mm256_i32gather_pd(factor, ei, 8);
    __m256d pv = _mm256_loadu_pd(probs + k);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(xv, pv), fv, acc);
  }
  double out = hsum(acc);
  for (; k < n; ++k) out += x[tails[k]] * probs[k] * factor[edges[k]];
  return out;
}

double gather_dot2_avx2(const double* x, const std::int32_t* tails,
                        const double* probs, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m128i ti = _mm_loadu_si128(reinterpret_cast<const __m128i*>(tails + k));
    __m256d xv = _mm256_i32gather_pd(x, ti, 8);
    __m256d pv = _mm256_loadu_pd(probs + k);
    acc = _mm256_fmadd_pd(xv, pv, acc);
  }
  double out = hsum(acc);
  for (; k < n; ++k) out += x[tails[k]] * probs[k];
  return out;
}

void gain_accum_avx2(double* g, const double* x, const std::int32_t* tails,
                     const double* probs, const double* eff, double scale,
                     std::size_t n) {
  const __m256d sv = _mm256_set1_pd(scale);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m128i ti = _mm_loadu_si128(reinterpret_cast<const __m128i*>(tails + k));
    __m256d xv = _mm256_i32gather_pd(x, ti, 8);
    __m256d pv = _mm256_loadu_pd(probs + k);
    __m256d ev = _mm256_loadu_pd(eff + k);
    __m256d gv = _mm256_loadu_pd(g + k);
    __m256d term = _mm256_mul_pd(_mm256_mul_pd(sv, xv), _mm256_mul_pd(pv, ev));
    _mm256_storeu_pd(g + k, _mm256_add_pd(gv, term));
  }
  for (; k < n; ++k) g[k] += scale * x[tails[k]] * probs[k] * eff[k];
}

}  // namespace

const Ops* avx2_ops_impl() {
  static const Ops ops{"avx2", gather_dot3_avx2, gather_dot2_avx2,
                       gain_accum_avx2};
  return &ops;
}

}  // namespace ume::kernels

#else

namespace ume::kernels {
const Ops* avx2_ops_impl() { return nullptr; }
}  // namespace ume::kernels

#endif
