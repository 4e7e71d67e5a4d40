#pragma once

#include "exotic/algebra.hpp"
#include "exotic/estimate.hpp"
#include "exotic/posdef.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace exotic {

/// Hölder pair (p, q) with 1/p + 1/q = 1. conjugate() swaps the stored pair, so it is an
/// exact involution even where p/(p-1) does not round-trip.
class Exponent {
 public:
  explicit Exponent(double p);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  Exponent conjugate() const noexcept { return Exponent(q_, p_); }
  bool is_infinite() const noexcept;

 private:
  Exponent(double p, double q) : p_(p), q_(q) {}
  double p_;
  double q_;
};

inline constexpr std::uint64_t kDefaultSeed = 0xE071C;

struct PowerBudget {
  std::size_t radius = 12;
  std::size_t iterations = 200;
  std::uint64_t seed = kDefaultSeed;
  std::size_t random_vectors = 4;
};

/// max ‖f∗g‖_p / ‖g‖_p over generated g supported in B_r, r = 1..radius, with f∗g evaluated
/// on its full support. Candidates are δ_e, Boyd duality-map iterates started from the
/// indicator of B_r, and seeded random nonnegative vectors.
NormEstimate lambda_p_lower(const GroupFunction& f, Exponent p, const PowerBudget& budget = {});

/// max of the λ_p and λ_q lower bounds.
NormEstimate pf_star_lower(const GroupFunction& f, Exponent p, const PowerBudget& budget = {});

/// Σ_k (k+1) ‖f χ_{S_k}‖₂. params.constant_status is "proven" for free groups and
/// "family_checked" for cyclic free products.
NormEstimate reduced_upper_haagerup(const GroupFunction& f);

/// Schur test with weights ρ^{|s|}: √(sup (|f|∗v)/v · sup (|f*|∗v)/v), minimized over a fixed
/// ρ grid. Returns nullopt when |supp f| · |B_{r_f}| exceeds `work_limit`.
std::optional<NormEstimate> reduced_upper_schur(const GroupFunction& f, double work_limit = 5e7);

/// The smaller of the Haagerup and Schur bounds.
NormEstimate best_reduced_upper(const GroupFunction& f);

/// reduced^{2/p} ‖f‖₁^{1-2/p}. For p < 2 the conjugate exponent is used (PF*_p = PF*_q).
NormEstimate pf_star_upper_interp(const GroupFunction& f, double p, const NormEstimate& reduced_upper);

struct OkayasuTerm {
  std::size_t n;
  double value;
  double support_size;
};

struct OkayasuSequence {
  double p;
  double q;
  std::vector<OkayasuTerm> terms;
  bool truncated = false;
  std::string truncation_reason;
};

/// ‖(f*∗f)^{∗n}‖_q^{1/2n} for n = 1..n_max by repeated sparse convolution. Stops early, with
/// a truncation marker, when the next power would exceed the support cap.
OkayasuSequence okayasu_upper_seq(const GroupFunction& f, double p, std::size_t n_max,
                                  std::size_t cap = support_cap());

/// Heuristic: ‖f‖_{L^q(ω_{2d/p})}, the weighted norm dominating PF*_p up to an unknown constant.
NormEstimate weighted_rd_upper(const GroupFunction& f, double p, double d);

struct RdNorm {
  double degree;
  double value;  // +∞ when the series diverges
  bool convergent;
  double exponential_rate;
  double polynomial_exponent;
};

struct RdMembership {
  double p;
  double rd_bound;
  double required_degree;
  std::vector<RdNorm> norms;
  bool member;
};

/// ‖φ ω_d^{-1}‖_p for d on a grid above (2/p)·rd_bound, by the radial series.
RdMembership rd_membership(const PosDefFunction& phi, double p, double rd_bound,
                           std::vector<double> degree_offsets = {0.25, 0.5, 1.0, 2.0});

}  // namespace exotic
