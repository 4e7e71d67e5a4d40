#include "exotic/dense.hpp"

#include "exotic/parallel.hpp"
#include "exotic/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace exotic::dense {

double lp_norm(std::span<const double> x, double p) {
  const auto& k = simd::kernels();
  const std::size_t chunks = (x.size() + kChunkSize - 1) / kChunkSize;
  if (std::isinf(p)) {
    std::vector<double> partial(chunks, 0.0);
    parallel_chunks(x.size(), [&](std::size_t b, std::size_t e) {
      partial[b / kChunkSize] = k.max_abs(x.data() + b, e - b);
    });
    double m = 0.0;
    for (double v : partial) m = std::max(m, v);
    return m;
  }
  std::vector<simd::CompensatedSum> partial(chunks);
  parallel_chunks(x.size(), [&](std::size_t b, std::size_t e) {
    partial[b / kChunkSize] = k.sum_abs_pow(x.data() + b, e - b, p);
  });
  simd::CompensatedSum total;
  for (const auto& s : partial) total.merge(s);
  const double sum = total.value();
  if (p == 1.0) return sum;
  if (p == 2.0) return std::sqrt(sum);
  return std::pow(sum, 1.0 / p);
}

void gather(std::span<double> out, std::span<const double> in, std::span<const std::uint32_t> index) {
  const auto& k = simd::kernels();
  parallel_chunks(out.size(), [&](std::size_t b, std::size_t e) { k.gather(out.data() + b, in.data(), index.data() + b, e - b); });
}

void axpy(std::span<double> y, double a, std::span<const double> x) {
  const auto& k = simd::kernels();
  parallel_chunks(y.size(), [&](std::size_t b, std::size_t e) { k.axpy(y.data() + b, a, x.data() + b, e - b); });
}

void gather_axpy(std::span<double> y, double a, std::span<const double> x, std::span<const std::uint32_t> index) {
  const auto& k = simd::kernels();
  parallel_chunks(y.size(), [&](std::size_t b, std::size_t e) {
    k.gather_axpy(y.data() + b, a, x.data(), index.data() + b, e - b);
  });
}

void scale(std::span<double> x, double a) {
  const auto& k = simd::kernels();
  parallel_chunks(x.size(), [&](std::size_t b, std::size_t e) { k.scale(x.data() + b, a, e - b); });
}

void signed_power(std::span<double> out, std::span<const double> in, double exponent) {
  const auto& k = simd::kernels();
  parallel_chunks(out.size(), [&](std::size_t b, std::size_t e) {
    k.signed_power(out.data() + b, in.data() + b, e - b, exponent);
  });
}

}  // namespace exotic::dense
