#include "exotic/simd/kernels.hpp"

#include <cmath>

namespace exotic::simd {

namespace {

void gather(double* out, const double* in, const std::uint32_t* index, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = in[index[i]];
}

void axpy(double* y, double a, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double t = a * x[i];
    y[i] = y[i] + t;
  }
}

void gather_axpy(double* y, double a, const double* x, const std::uint32_t* index, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double t = a * x[index[i]];
    y[i] = y[i] + t;
  }
}

void scale(double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

CompensatedSum sum_abs(const double* x, std::size_t n) {
  CompensatedSum s;
  for (std::size_t i = 0; i < n; ++i) s.add(std::fabs(x[i]));
  return s;
}

CompensatedSum sum_squares(const double* x, std::size_t n) {
  CompensatedSum s;
  for (std::size_t i = 0; i < n; ++i) s.add(x[i] * x[i]);
  return s;
}

CompensatedSum sum_abs_pow(const double* x, std::size_t n, double p) {
  if (p == 1.0) return sum_abs(x, n);
  if (p == 2.0) return sum_squares(x, n);
  CompensatedSum s;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] != 0.0) s.add(std::pow(std::fabs(x[i]), p));
  }
  return s;
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(x[i]));
  return m;
}

void signed_power(double* out, const double* in, std::size_t n, double exponent) {
  if (exponent == 1.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = in[i];
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double v = in[i];
    if (v == 0.0) {
      out[i] = 0.0;
    } else if (exponent == 0.0) {
      out[i] = v > 0.0 ? 1.0 : -1.0;
    } else {
      out[i] = std::copysign(std::pow(std::fabs(v), exponent), v);
    }
  }
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{Isa::Scalar, "scalar", gather,      axpy,        gather_axpy, scale,
                                 sum_abs,     sum_squares, sum_abs_pow, max_abs,     signed_power};
  return table;
}

}  // namespace exotic::simd
