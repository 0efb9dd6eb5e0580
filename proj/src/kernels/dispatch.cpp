#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"

namespace phaselab::kernels {

namespace {

constexpr KernelTable kScalar{Isa::Scalar,
                              scalar::dot,
                              scalar::axpy,
                              scalar::xpay,
                              scalar::spmv_csr,
                              scalar::laplacian_row,
                              scalar::flux_divergence_row};

#if defined(PHASELAB_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::Avx2,
                            avx2::dot,
                            avx2::axpy,
                            avx2::xpay,
                            avx2::spmv_csr,
                            avx2::laplacian_row,
                            avx2::flux_divergence_row};

bool cpu_has_avx2() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable* initial_table() noexcept {
  const KernelTable* best = avx2_table();
  if (const char* env = std::getenv("PHASELAB_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return &kScalar;
    if (want == "avx2" && best) return best;
  }
  return best ? best : &kScalar;
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#if defined(PHASELAB_HAVE_AVX2)
  static const bool ok = cpu_has_avx2();
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_relaxed); }

bool set_active_isa(Isa isa) noexcept {
  const KernelTable* t = isa == Isa::Scalar ? &kScalar : avx2_table();
  if (!t) return false;
  current().store(t, std::memory_order_relaxed);
  return true;
}

}  // namespace phaselab::kernels
