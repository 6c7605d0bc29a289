#include <atomic>
#include <cstdlib>
#include <string>

#include "ume/errors.hpp"
#include "ume/kernels.hpp"

namespace ume::kernels {

const Ops* avx2_ops_impl();  // defined per-architecture in kernels_avx2.cpp

const Ops* avx2_ops() {
#if defined(__x86_64__) || defined(_M_X64)
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? avx2_ops_impl() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const Ops* pick_default() {
  if (const char* env = std::getenv("UME_KERNELS")) {
    std::string name(env);
    if (name == "scalar") return &scalar_ops();
    if (name == "avx2" && avx2_ops() != nullptr) return avx2_ops();
    // Unknown or unavailable: fall through to auto-detection.
  }
  if (const Ops* ops = avx2_ops()) return ops;
  return &scalar_ops();
}

std::atomic<const Ops*>& active_slot() {
  static std::atomic<const Ops*> slot{pick_default()};
  return slot;
}

}  // namespace

const Ops& active() { return *active_slot().load(std::memory_order_relaxed); }

void select(std::string_view name) {
  if (name == "scalar") {
    active_slot().store(&scalar_ops());
    return;
  }
  if (name == "avx2") {
    if (const Ops* ops = avx2_ops()) {
      active_slot().store(ops);
      return;
    }
    throw DataError("kernel backend 'avx2' not supported on this CPU");
  }
  throw DataError("unknown kernel backend '" + std::string(name) + "'");
}

}  // namespace ume::kernels
