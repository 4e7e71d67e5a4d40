#pragma once

#include "exotic/words.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace exotic {

inline constexpr std::size_t kDefaultSupportCap = 5'000'000;

/// Support cap for materialized functions: EXOTIC_MAX_SUPPORT, else 5e6 entries.
std::size_t support_cap();

/// A scalar function given by an evaluation rule, as used in dual pairings. `radial`
/// is set when the value depends only on word length.
struct TestFunction {
  std::function<double(const GroupElement&)> point;
  std::function<double(std::size_t)> radial;
};

/// Finitely supported real function on the group, stored either as a sorted sparse map
/// (canonical word order, no explicit zeros) or radially as Σ_k c_k χ_{S_k}.
class GroupFunction {
 public:
  using Entry = std::pair<GroupElement, double>;

  /// Duplicates are summed and zeros dropped.
  static GroupFunction sparse(GroupPresentation g, std::vector<Entry> entries);
  static GroupFunction delta(const GroupElement& u, double coefficient = 1.0);
  static GroupFunction radial(GroupPresentation g, std::vector<double> coefficients);
  static GroupFunction sphere_indicator(GroupPresentation g, std::size_t k);
  static GroupFunction ball_indicator(GroupPresentation g, std::size_t k);
  /// `delta:<word>`, `sphere:<k>`, `ball:<k>`, `radial:<c0,c1,...>`, or `sparse:<word>=<v>,...`.
  static GroupFunction parse(std::string_view descriptor, GroupPresentation g);

  const GroupPresentation& presentation() const noexcept { return pres_; }
  bool is_radial() const noexcept { return radial_; }
  std::span<const double> radial_coefficients() const noexcept { return coefficients_; }
  /// Sparse entries; throws DomainError for radial functions (materialize first).
  std::span<const Entry> entries() const;

  /// Sparse expansion; throws ResourceLimitError above `cap` entries.
  GroupFunction materialize(std::size_t cap = support_cap()) const;

  double operator()(const GroupElement& s) const;
  std::size_t support_radius() const noexcept;
  /// Number of nonzero entries, as a double (radial supports can be astronomically large).
  double support_size() const noexcept;
  bool is_nonnegative() const noexcept;
  bool is_zero() const noexcept;
  std::string descriptor() const;

 private:
  explicit GroupFunction(GroupPresentation g) : pres_(g) {}

  GroupPresentation pres_;
  bool radial_ = false;
  std::vector<double> coefficients_;
  std::vector<Entry> entries_;
};

/// (f∗g)(s) = Σ_u f(u) g(u⁻¹s). Radial inputs are expanded first. Throws
/// ResourceLimitError when the estimated output support exceeds `cap`.
GroupFunction convolve(const GroupFunction& f, const GroupFunction& g, std::size_t cap = support_cap());
/// f*(s) = f(s⁻¹) (real scalars).
GroupFunction involution(const GroupFunction& f);
GroupFunction add(const GroupFunction& f, const GroupFunction& g);
GroupFunction scaled(const GroupFunction& f, double a);

/// ℓ^p norm for p in (0, ∞] under counting measure; radial functions use Σ_k |c_k|^p |S_k|.
double lp_norm(const GroupFunction& f, double p);

/// ω_d(s) = (1 + |s|)^d; negative degree gives ω_{|d|}^{-1}.
struct PolynomialWeight {
  double degree = 0.0;
  double operator()(std::size_t length) const;
  double operator()(const GroupElement& s) const { return (*this)(s.length()); }
};

/// ‖f · ω_d‖_p.
double weighted_norm(const GroupFunction& f, double p, PolynomialWeight w);

/// Σ_s f(s) φ(s); closed form Σ_k c_k φ(k) |S_k| when both sides are radial.
double pair(const GroupFunction& f, const TestFunction& phi);

}  // namespace exotic
