// Compiled with -mavx2 only (no -mfma) so that axpy stays bit-identical to the scalar path.

#include "exotic/simd/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace exotic::simd {

namespace {

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

// Lane-wise Neumaier accumulator.
struct Lanes {
  __m256d sum = _mm256_setzero_pd();
  __m256d carry = _mm256_setzero_pd();

  void add(__m256d x) {
    const __m256d t = _mm256_add_pd(sum, x);
    const __m256d big_sum = _mm256_cmp_pd(abs_pd(sum), abs_pd(x), _CMP_GE_OQ);
    const __m256d when_sum = _mm256_add_pd(_mm256_sub_pd(sum, t), x);
    const __m256d when_x = _mm256_add_pd(_mm256_sub_pd(x, t), sum);
    carry = _mm256_add_pd(carry, _mm256_blendv_pd(when_x, when_sum, big_sum));
    sum = t;
  }

  CompensatedSum finish() const {
    alignas(32) double s[4];
    alignas(32) double c[4];
    _mm256_store_pd(s, sum);
    _mm256_store_pd(c, carry);
    CompensatedSum out;
    for (int lane = 0; lane < 4; ++lane) out.merge(CompensatedSum{s[lane], c[lane]});
    return out;
  }
};

void gather(double* out, const double* in, const std::uint32_t* index, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(index + i));
    _mm256_storeu_pd(out + i, _mm256_i32gather_pd(in, idx, 8));
  }
  for (; i < n; ++i) out[i] = in[index[i]];
}

void axpy(double* y, double a, const double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), t));
  }
  for (; i < n; ++i) {
    const double t = a * x[i];
    y[i] = y[i] + t;
  }
}

void gather_axpy(double* y, double a, const double* x, const std::uint32_t* index, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(index + i));
    const __m256d t = _mm256_mul_pd(va, _mm256_i32gather_pd(x, idx, 8));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), t));
  }
  for (; i < n; ++i) {
    const double t = a * x[index[i]];
    y[i] = y[i] + t;
  }
}

void scale(double* x, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), va));
  for (; i < n; ++i) x[i] *= a;
}

CompensatedSum finish_with_tail(const Lanes& lanes, const double* x, std::size_t i, std::size_t n,
                                double (*term)(double)) {
  CompensatedSum out = lanes.finish();
  for (; i < n; ++i) out.add(term(x[i]));
  return out;
}

CompensatedSum sum_abs(const double* x, std::size_t n) {
  Lanes lanes;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) lanes.add(abs_pd(_mm256_loadu_pd(x + i)));
  return finish_with_tail(lanes, x, i, n, [](double v) { return std::fabs(v); });
}

CompensatedSum sum_squares(const double* x, std::size_t n) {
  Lanes lanes;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    lanes.add(_mm256_mul_pd(v, v));
  }
  return finish_with_tail(lanes, x, i, n, [](double v) { return v * v; });
}

CompensatedSum sum_abs_pow(const double* x, std::size_t n, double p) {
  if (p == 1.0) return sum_abs(x, n);
  if (p == 2.0) return sum_squares(x, n);
  Lanes lanes;
  alignas(32) double buf[4];
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (int lane = 0; lane < 4; ++lane) {
      const double v = x[i + lane];
      buf[lane] = v == 0.0 ? 0.0 : std::pow(std::fabs(v), p);
    }
    lanes.add(_mm256_load_pd(buf));
  }
  CompensatedSum out = lanes.finish();
  for (; i < n; ++i) {
    if (x[i] != 0.0) out.add(std::pow(std::fabs(x[i]), p));
  }
  return out;
}

double max_abs(const double* x, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, abs_pd(_mm256_loadu_pd(x + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double out = std::fmax(std::fmax(lanes[0], lanes[1]), std::fmax(lanes[2], lanes[3]));
  for (; i < n; ++i) out = std::fmax(out, std::fabs(x[i]));
  return out;
}

void signed_power(double* out, const double* in, std::size_t n, double exponent) {
  std::size_t i = 0;
  if (exponent == 1.0) {
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_loadu_pd(in + i));
    for (; i < n; ++i) out[i] = in[i];
    return;
  }
  if (exponent == 0.0) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d minus_one = _mm256_set1_pd(-1.0);
    for (; i + 4 <= n; i += 4) {
      const __m256d v = _mm256_loadu_pd(in + i);
      const __m256d pos = _mm256_and_pd(_mm256_cmp_pd(v, zero, _CMP_GT_OQ), one);
      const __m256d neg = _mm256_and_pd(_mm256_cmp_pd(v, zero, _CMP_LT_OQ), minus_one);
      _mm256_storeu_pd(out + i, _mm256_or_pd(pos, neg));
    }
    for (; i < n; ++i) out[i] = in[i] > 0.0 ? 1.0 : (in[i] < 0.0 ? -1.0 : 0.0);
    return;
  }
  for (; i < n; ++i) {
    const double v = in[i];
    out[i] = v == 0.0 ? 0.0 : std::copysign(std::pow(std::fabs(v), exponent), v);
  }
}

}  // namespace

const KernelTable* avx2_kernels() noexcept {
  static const KernelTable table{Isa::Avx2, "avx2", gather,      axpy,        gather_axpy, scale,
                                 sum_abs,   sum_squares, sum_abs_pow, max_abs,     signed_power};
  return &table;
}

}  // namespace exotic::simd
