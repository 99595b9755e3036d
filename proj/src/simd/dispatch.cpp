#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "simd_impl.hpp"

namespace polya::simd {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::scalar,
                                 detail::dot_scalar,
                                 detail::axpy_scalar,
                                 detail::spmv_scalar,
                                 detail::weighted_sq_sum_scalar,
                                 detail::masked_diff_sq_sum_scalar,
                                 detail::polygon_row_scalar};
  return table;
}

const KernelTable* avx2_kernels() {
#if defined(POLYA_HAVE_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return supported ? &detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable* initial_table() {
  const char* env = std::getenv("POLYA_LAB_SIMD");
  const std::string want = env ? env : "auto";
  if (want == "scalar") return &scalar_kernels();
  const KernelTable* avx = avx2_kernels();
  if (avx) return avx;
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{initial_table()};
  return slot;
}

}  // namespace

const KernelTable& kernels() { return *active_slot().load(std::memory_order_acquire); }

void force_isa(Isa isa) {
  const KernelTable* t = isa == Isa::scalar ? &scalar_kernels() : avx2_kernels();
  if (!t) throw std::runtime_error("requested ISA is not available on this CPU");
  active_slot().store(t, std::memory_order_release);
}

}  // namespace polya::simd
