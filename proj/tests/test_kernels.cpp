#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "ume/errors.hpp"
#include "ume/kernels.hpp"
#include "ume/rng.hpp"

using namespace ume;

namespace {

struct KernelData {
  std::vector<double> x, probs, factor, eff, a, b;
  std::vector<std::int32_t> tails, edges;
};

KernelData make_kernel_data(Rng& rng, std::size_t n, std::size_t pool) {
  KernelData d;
  d.x.resize(pool);
  d.factor.resize(pool);
  for (std::size_t i = 0; i < pool; ++i) {
    d.x[i] = rng.uniform() * 2.0 - 0.5;
    d.factor[i] = rng.uniform();
  }
  d.probs.resize(n);
  d.eff.resize(n);
  d.a.resize(n);
  d.b.resize(n);
  d.tails.resize(n);
  d.edges.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.probs[i] = rng.uniform();
    d.eff[i] = rng.uniform();
    d.a[i] = rng.uniform() * 4.0 - 2.0;
    d.b[i] = rng.uniform() * 4.0 - 2.0;
    d.tails[i] = static_cast<std::int32_t>(rng.uniform_int(0, pool - 1));
    d.edges[i] = static_cast<std::int32_t>(rng.uniform_int(0, pool - 1));
  }
  return d;
}

}  // namespace

TEST_CASE("scalar and avx2 kernels agree") {
  const kernels::Ops* simd = kernels::avx2_ops();
  if (simd == nullptr) return;  // nothing to compare on this machine
  const kernels::Ops& ref = kernels::scalar_ops();

  Rng rng(42);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 64u, 257u}) {
    KernelData d = make_kernel_data(rng, n, std::max<std::size_t>(n * 2, 8));

    const double d3_ref = ref.gather_dot3(d.x.data(), d.tails.data(),
                                          d.probs.data(), d.edges.data(),
                                          d.factor.data(), n);
    const double d3_simd = simd->gather_dot3(d.x.data(), d.tails.data(),
                                             d.probs.data(), d.edges.data(),
                                             d.factor.data(), n);
    CHECK(d3_ref == doctest::Approx(d3_simd).epsilon(1e-13));

    const double d2_ref =
        ref.gather_dot2(d.x.data(), d.tails.data(), d.probs.data(), n);
    const double d2_simd =
        simd->gather_dot2(d.x.data(), d.tails.data(), d.probs.data(), n);
    CHECK(d2_ref == doctest::Approx(d2_simd).epsilon(1e-13));

    std::vector<double> g_ref(n, 0.25), g_simd(n, 0.25);
    ref.gain_accum(g_ref.data(), d.x.data(), d.tails.data(), d.probs.data(),
                   d.eff.data(), 0.7, n);
    simd->gain_accum(g_simd.data(), d.x.data(), d.tails.data(), d.probs.data(),
                     d.eff.data(), 0.7, n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(g_ref[i] == doctest::Approx(g_simd[i]).epsilon(1e-13));
    }

  }
}

TEST_CASE("kernel backend selection") {
  const std::string initial = kernels::active().name;
  kernels::select("scalar");
  CHECK(std::string(kernels::active().name) == "scalar");
  CHECK_THROWS_AS(kernels::select("neon"), DataError);
  if (kernels::avx2_ops() != nullptr) {
    kernels::select("avx2");
    CHECK(std::string(kernels::active().name) == "avx2");
  }
  kernels::select(initial);
}

TEST_CASE("scalar kernel reference values") {
  // x = (2, 3), one entry: x[1] * 0.5 * factor[0]=0.25 -> 0.375
  const std::vector<double> x{2.0, 3.0};
  const std::vector<std::int32_t> tails{1};
  const std::vector<double> probs{0.5};
  const std::vector<std::int32_t> edges{0};
  const std::vector<double> factor{0.25};
  const auto& ops = kernels::scalar_ops();
  CHECK(ops.gather_dot3(x.data(), tails.data(), probs.data(), edges.data(),
                        factor.data(), 1) == doctest::Approx(0.375));
  CHECK(ops.gather_dot2(x.data(), tails.data(), probs.data(), 1) ==
        doctest::Approx(1.5));
}
