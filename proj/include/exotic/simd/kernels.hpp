#pragma once

// Inner-loop kernels over dense ball vectors. Every kernel has a scalar reference
// implementation; the AVX2 variants are selected at runtime when the CPU supports them.
//
// gather, axpy, gather_axpy, scale, max_abs and signed_power are bit-identical across variants.
// The compensated sums accumulate per lane in the vector variants, so they agree with
// the scalar reference to rounding, not bitwise.

#include <cstddef>
#include <cstdint>

namespace exotic::simd {

enum class Isa { Scalar, Avx2 };

/// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) noexcept {
    const double t = sum + x;
    if ((sum < 0 ? -sum : sum) >= (x < 0 ? -x : x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  void merge(const CompensatedSum& other) noexcept {
    add(other.sum);
    carry += other.carry;
  }
  double value() const noexcept { return sum + carry; }
};

struct KernelTable {
  Isa isa;
  const char* name;
  /// out[i] = in[index[i]]
  void (*gather)(double* out, const double* in, const std::uint32_t* index, std::size_t n);
  /// y[i] += a * x[i], without fused multiply-add
  void (*axpy)(double* y, double a, const double* x, std::size_t n);
  /// y[i] += a * x[index[i]]
  void (*gather_axpy)(double* y, double a, const double* x, const std::uint32_t* index, std::size_t n);
  void (*scale)(double* x, double a, std::size_t n);
  CompensatedSum (*sum_abs)(const double* x, std::size_t n);
  CompensatedSum (*sum_squares)(const double* x, std::size_t n);
  /// Σ |x_i|^p for finite p > 0; p = 1 and p = 2 dispatch to the dedicated sums.
  CompensatedSum (*sum_abs_pow)(const double* x, std::size_t n, double p);
  double (*max_abs)(const double* x, std::size_t n);
  /// out[i] = sign(in[i]) |in[i]|^exponent, with sign(0) = 0 and exponent >= 0.
  void (*signed_power)(double* out, const double* in, std::size_t n, double exponent);
};

const KernelTable& scalar_kernels() noexcept;
/// nullptr when the AVX2 variants were not compiled in.
const KernelTable* avx2_kernels() noexcept;

bool cpu_supports(Isa isa) noexcept;
const char* isa_name(Isa isa) noexcept;

/// The dispatch table in use. Defaults to the best supported ISA; EXOTIC_SIMD=scalar forces
/// the reference kernels.
const KernelTable& kernels() noexcept;
Isa active_isa() noexcept;
/// Throws std::invalid_argument when the ISA is unavailable.
void select_isa(Isa isa);

}  // namespace exotic::simd
