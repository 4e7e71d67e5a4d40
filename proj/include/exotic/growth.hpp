#pragma once

#include "exotic/words.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <vector>

namespace exotic {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::size_t kDefaultEnumerationCap = 2'000'000;

/// Free(d): |S_k| = 2d(2d-1)^{k-1}; CyclicFreeProduct(m,d): d(m-1)((d-1)(m-1))^{k-1}.
BigInt sphere_size(const GroupPresentation& g, std::size_t k);
BigInt ball_size(const GroupPresentation& g, std::size_t k);
double sphere_size_double(const GroupPresentation& g, std::size_t k);
/// log |S_k|, or -inf for empty spheres.
double log_sphere_size(const GroupPresentation& g, std::size_t k);

/// Breadth-first enumeration of S_k in canonical order. Throws ResourceLimitError
/// (flag `--enum-cap`) when |B_k| exceeds `cap`.
std::vector<GroupElement> sphere(const GroupPresentation& g, std::size_t k,
                                 std::size_t cap = kDefaultEnumerationCap);
/// All of B_k in canonical order, enumerated by the same breadth-first search.
std::vector<GroupElement> ball(const GroupPresentation& g, std::size_t k, std::size_t cap = kDefaultEnumerationCap);

enum class GrowthSource { Enumerated, ClosedForm };

struct GrowthRow {
  std::size_t k;
  BigInt sphere;
  BigInt ball;
  double ratio;  // |S_k| / |S_{k-1}|, NaN for k = 0
};

struct GrowthProfile {
  std::vector<GrowthRow> rows;
  double growth_rate;
  GrowthSource source;
  std::size_t max_radius;
};

GrowthProfile enumerate_profile(const GroupPresentation& g, std::size_t kmax, std::size_t cap = kDefaultEnumerationCap);
GrowthProfile closed_form_profile(const GroupPresentation& g, std::size_t kmax);

/// lim |B_n|^{1/n}: 2d-1 for free groups, max(1, (d-1)(m-1)) for cyclic free products.
double growth_rate(const GroupPresentation& g);

/// p* = log(C)/t; the Haagerup function e^{-t|s|} is in ℓ^p exactly for p > p*.
double lp_membership_threshold(const GroupPresentation& g, double t);

/// ‖e^{-t|·|}‖_p via the geometric series, or +∞ when the series diverges.
double phi_lp_norm(const GroupPresentation& g, double t, double p);

/// Ratio test on the partial sums of Σ_k |S_k| e^{-ptk}.
struct SeriesClassification {
  double p;
  double tail_ratio;  // a_{kmax} / a_{kmax-1}
  bool convergent;
  std::vector<double> partial_sums;
};

SeriesClassification classify_phi_series(const GroupPresentation& g, double t, double p, std::size_t kmax = 60);

}  // namespace exotic
