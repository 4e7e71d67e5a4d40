#pragma once

#include "exotic/algebra.hpp"
#include "exotic/estimate.hpp"
#include "exotic/words.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>

namespace exotic {

inline constexpr std::size_t kMaxGramSample = 2000;

/// A (claimed) positive definite function. Haagerup functions e^{-t|s|} are positive
/// definite because word length is conditionally negative definite on these families;
/// custom rules are only trusted after gram_psd_check.
class PosDefFunction {
 public:
  static PosDefFunction haagerup(GroupPresentation g, double t);
  static PosDefFunction custom(GroupPresentation g, std::function<double(const GroupElement&)> rule, std::string name);
  static PosDefFunction custom_radial(GroupPresentation g, std::function<double(std::size_t)> profile,
                                      std::string name);

  const GroupPresentation& presentation() const noexcept { return pres_; }
  const std::string& name() const noexcept { return name_; }
  /// Decay parameter t for Haagerup functions.
  std::optional<double> decay() const noexcept { return decay_; }
  bool is_radial() const noexcept { return static_cast<bool>(profile_); }

  double operator()(const GroupElement& s) const;
  /// Value on the sphere S_k; throws DomainError for non-radial rules.
  double radial_value(std::size_t k) const;
  TestFunction as_test_function() const;

 private:
  PosDefFunction(GroupPresentation g, std::string name) : pres_(g), name_(std::move(name)) {}

  GroupPresentation pres_;
  std::string name_;
  std::optional<double> decay_;
  std::function<double(const GroupElement&)> rule_;
  std::function<double(std::size_t)> profile_;
};

PosDefFunction make_haagerup_function(const GroupPresentation& g, double t);

struct GramReport {
  double min_eigenvalue;
  bool pass;
  std::size_t dimension;
  double tolerance;
};

/// Minimum eigenvalue of [φ(s_i⁻¹ s_j)]; passes when it is ≥ -tol. Default tolerance is
/// 1e-8 · dimension.
GramReport gram_psd_check(const PosDefFunction& phi, std::span<const GroupElement> sample,
                          std::optional<double> tolerance = std::nullopt);

/// ℓ^p membership of e^{-t|·|}: member iff p > p* strictly. At p = p* (to relative 1e-12)
/// the function lies only in ∩_{ε>0} ℓ^{p+ε}.
struct LpMembership {
  double p;
  double p_star;
  bool member;
  bool member_of_intersection;
};

LpMembership haagerup_lp_membership(const GroupPresentation& g, double t, double p);

/// |⟨f, φ⟩| as a certified lower bound for ‖f‖ in C*_{L^p} (and hence in PF*_p).
/// Requires a Haagerup function certified in ℓ^p; otherwise throws PreconditionError
/// carrying p*.
NormEstimate state_lower_bound(const GroupFunction& f, const PosDefFunction& phi, double p);

}  // namespace exotic
