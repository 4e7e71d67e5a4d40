#pragma once

// Chunked, deterministic operations on dense ball vectors. Work is split into fixed
// chunks (see parallel.hpp) and each chunk runs the active SIMD kernel; reductions merge
// chunk partials in chunk order, so results do not depend on the worker count.

#include <cstdint>
#include <span>

namespace exotic::dense {

/// ℓ^p norm for p in (0, ∞]; p = ∞ gives the max absolute value.
double lp_norm(std::span<const double> x, double p);
void gather(std::span<double> out, std::span<const double> in, std::span<const std::uint32_t> index);
void axpy(std::span<double> y, double a, std::span<const double> x);
/// y[i] += a * x[index[i]]
void gather_axpy(std::span<double> y, double a, std::span<const double> x, std::span<const std::uint32_t> index);
void scale(std::span<double> x, double a);
void signed_power(std::span<double> out, std::span<const double> in, double exponent);

}  // namespace exotic::dense
