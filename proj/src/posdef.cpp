#include "exotic/posdef.hpp"

#include "exotic/error.hpp"
#include "exotic/growth.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace exotic {

PosDefFunction PosDefFunction::haagerup(GroupPresentation g, double t) {
  if (!(t > 0.0) || std::isinf(t)) throw DomainError("decay parameter t must be positive and finite");
  PosDefFunction phi(g, "haagerup_exp");
  phi.decay_ = t;
  phi.profile_ = [t](std::size_t k) { return std::exp(-t * static_cast<double>(k)); };
  return phi;
}

PosDefFunction PosDefFunction::custom(GroupPresentation g, std::function<double(const GroupElement&)> rule,
                                      std::string name) {
  PosDefFunction phi(g, std::move(name));
  phi.rule_ = std::move(rule);
  return phi;
}

PosDefFunction PosDefFunction::custom_radial(GroupPresentation g, std::function<double(std::size_t)> profile,
                                             std::string name) {
  PosDefFunction phi(g, std::move(name));
  phi.profile_ = std::move(profile);
  return phi;
}

double PosDefFunction::operator()(const GroupElement& s) const {
  if (!(s.presentation() == pres_)) throw DomainError("element does not belong to " + pres_.descriptor());
  return profile_ ? profile_(s.length()) : rule_(s);
}

double PosDefFunction::radial_value(std::size_t k) const {
  if (!profile_) throw DomainError("positive definite function '" + name_ + "' is not radial");
  return profile_(k);
}

TestFunction PosDefFunction::as_test_function() const {
  TestFunction out;
  out.point = [self = *this](const GroupElement& s) { return self(s); };
  if (profile_) out.radial = profile_;
  return out;
}

PosDefFunction make_haagerup_function(const GroupPresentation& g, double t) { return PosDefFunction::haagerup(g, t); }

GramReport gram_psd_check(const PosDefFunction& phi, std::span<const GroupElement> sample,
                          std::optional<double> tolerance) {
  const std::size_t n = sample.size();
  if (n > kMaxGramSample) {
    throw ResourceLimitError("Gram sample of " + std::to_string(n) + " elements exceeds the limit of " +
                                 std::to_string(kMaxGramSample),
                             static_cast<double>(n), static_cast<double>(kMaxGramSample), "sample size");
  }
  const double tol = tolerance.value_or(1e-8 * static_cast<double>(std::max<std::size_t>(n, 1)));
  if (n == 0) return {0.0, true, 0, tol};
  Eigen::MatrixXd gram(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const GroupElement si_inv = inverse(sample[i]);
    for (std::size_t j = i; j < n; ++j) {
      const double v = phi(multiply(si_inv, sample[j]));
      gram(i, j) = v;
      gram(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  return {min_eig, min_eig >= -tol, n, tol};
}

LpMembership haagerup_lp_membership(const GroupPresentation& g, double t, double p) {
  const double p_star = lp_membership_threshold(g, t);
  const bool at_threshold = std::fabs(p - p_star) <= 1e-12 * std::max(1.0, p_star);
  const bool above = p > p_star && !at_threshold;
  return {p, p_star, above, above || at_threshold};
}

NormEstimate state_lower_bound(const GroupFunction& f, const PosDefFunction& phi, double p) {
  if (!(f.presentation() == phi.presentation())) throw DomainError("function and state live on different groups");
  if (!phi.decay()) {
    throw PreconditionError("state '" + phi.name() + "' has no certified ℓ^p membership; only Haagerup functions qualify");
  }
  const double t = *phi.decay();
  const auto m = haagerup_lp_membership(phi.presentation(), t, p);
  if (!m.member) {
    std::string why = m.member_of_intersection ? "p equals the membership threshold p* (only the intersection over p+ε holds)"
                                               : "p is below the membership threshold p*";
    throw PreconditionError("cannot certify e^{-t|s|} in ℓ^p: " + why, m.p_star, m.member_of_intersection);
  }
  NormEstimate e;
  e.value = std::fabs(pair(f, phi.as_test_function()));
  e.direction = Direction::CertifiedLower;
  e.target = Target::cstar_lp(p);
  e.method = "positive_definite_state";
  e.params = {{"t", t},
              {"p", number_to_json(p)},
              {"p_star", m.p_star},
              {"member_of_intersection", m.member_of_intersection},
              {"f", f.descriptor()},
              {"group", f.presentation().descriptor()},
              {"pairing", f.is_radial() ? "radial_closed_form" : "sparse_sum"},
              {"also_bounds", Target::pf_star(p).to_string()}};
  return e;
}

}  // namespace exotic
