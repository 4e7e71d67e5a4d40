#include "exotic/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

namespace exotic::simd {

#ifndef EXOTIC_HAVE_AVX2
const KernelTable* avx2_kernels() noexcept { return nullptr; }
#endif

bool cpu_supports(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(EXOTIC_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
  }
  return false;
}

const char* isa_name(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

namespace {

const KernelTable* detect() noexcept {
  if (const char* env = std::getenv("EXOTIC_SIMD"); env && std::string_view(env) == "scalar") {
    return &scalar_kernels();
  }
  if (cpu_supports(Isa::Avx2) && avx2_kernels()) return avx2_kernels();
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& active() {
  static std::atomic<const KernelTable*> table{detect()};
  return table;
}

}  // namespace

const KernelTable& kernels() noexcept { return *active().load(std::memory_order_acquire); }

Isa active_isa() noexcept { return kernels().isa; }

void select_isa(Isa isa) {
  if (!cpu_supports(isa)) throw std::invalid_argument(std::string("ISA not available: ") + isa_name(isa));
  active().store(isa == Isa::Avx2 ? avx2_kernels() : &scalar_kernels(), std::memory_order_release);
}

}  // namespace exotic::simd
