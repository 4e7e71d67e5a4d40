#include "exotic/growth.hpp"

#include "exotic/error.hpp"

#include <cmath>
#include <limits>
#include <set>

namespace exotic {

BigInt sphere_size(const GroupPresentation& g, std::size_t k) {
  if (k == 0) return 1;
  BigInt size = g.alphabet_size();
  BigInt branching = g.branching();
  for (std::size_t j = 1; j < k; ++j) size *= branching;
  return size;
}

BigInt ball_size(const GroupPresentation& g, std::size_t k) {
  BigInt total = 0;
  for (std::size_t j = 0; j <= k; ++j) total += sphere_size(g, j);
  return total;
}

double log_sphere_size(const GroupPresentation& g, std::size_t k) {
  if (k == 0) return 0.0;
  const double b = static_cast<double>(g.branching());
  if (k > 1 && b == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(static_cast<double>(g.alphabet_size())) + static_cast<double>(k - 1) * std::log(b);
}

double sphere_size_double(const GroupPresentation& g, std::size_t k) {
  if (k == 0) return 1.0;
  return static_cast<double>(g.alphabet_size()) * std::pow(static_cast<double>(g.branching()), static_cast<double>(k - 1));
}

std::vector<GroupElement> ball(const GroupPresentation& g, std::size_t k, std::size_t cap) {
  const BigInt needed = ball_size(g, k);
  if (needed > cap) {
    throw ResourceLimitError("enumerating B_" + std::to_string(k) + " of " + g.descriptor() + " needs " +
                                 needed.str() + " elements, above the enumeration cap " + std::to_string(cap) +
                                 " (raise --enum-cap)",
                             needed.convert_to<double>(), static_cast<double>(cap), "--enum-cap");
  }
  std::vector<GroupElement> out{GroupElement(g)};
  std::vector<GroupElement> frontier{GroupElement(g)};
  for (std::size_t level = 1; level <= k; ++level) {
    std::set<GroupElement> next;
    for (const auto& w : frontier) {
      for (std::size_t x = 0; x < g.alphabet_size(); ++x) {
        const Letter letter = static_cast<Letter>(x);
        GroupElement v = multiply(w, GroupElement::reduce(std::span<const Letter>(&letter, 1), g));
        if (v.length() == level) next.insert(std::move(v));
      }
    }
    frontier.assign(next.begin(), next.end());
    out.insert(out.end(), frontier.begin(), frontier.end());
  }
  return out;
}

std::vector<GroupElement> sphere(const GroupPresentation& g, std::size_t k, std::size_t cap) {
  auto all = ball(g, k, cap);
  std::vector<GroupElement> out;
  for (auto& u : all) {
    if (u.length() == k) out.push_back(std::move(u));
  }
  return out;
}

namespace {

GrowthProfile profile_from_spheres(const GroupPresentation& g, const std::vector<BigInt>& spheres, GrowthSource source) {
  GrowthProfile profile{{}, growth_rate(g), source, spheres.size() - 1};
  BigInt total = 0;
  for (std::size_t k = 0; k < spheres.size(); ++k) {
    total += spheres[k];
    double ratio = std::numeric_limits<double>::quiet_NaN();
    if (k > 0 && spheres[k - 1] != 0) ratio = spheres[k].convert_to<double>() / spheres[k - 1].convert_to<double>();
    profile.rows.push_back({k, spheres[k], total, ratio});
  }
  return profile;
}

}  // namespace

GrowthProfile enumerate_profile(const GroupPresentation& g, std::size_t kmax, std::size_t cap) {
  auto all = ball(g, kmax, cap);
  std::vector<BigInt> spheres(kmax + 1, 0);
  for (const auto& u : all) spheres[u.length()] += 1;
  return profile_from_spheres(g, spheres, GrowthSource::Enumerated);
}

GrowthProfile closed_form_profile(const GroupPresentation& g, std::size_t kmax) {
  std::vector<BigInt> spheres;
  for (std::size_t k = 0; k <= kmax; ++k) spheres.push_back(sphere_size(g, k));
  return profile_from_spheres(g, spheres, GrowthSource::ClosedForm);
}

double growth_rate(const GroupPresentation& g) { return std::max(1.0, static_cast<double>(g.branching())); }

double lp_membership_threshold(const GroupPresentation& g, double t) {
  if (!(t > 0.0)) throw DomainError("decay parameter t must be positive");
  return std::log(growth_rate(g)) / t;
}

double phi_lp_norm(const GroupPresentation& g, double t, double p) {
  if (!(t > 0.0)) throw DomainError("decay parameter t must be positive");
  if (!(p > 0.0)) throw DomainError("exponent p must be positive");
  if (std::isinf(p)) return 1.0;
  const double decay = std::exp(-p * t);
  const double a = static_cast<double>(g.alphabet_size());
  const double b = static_cast<double>(g.branching());
  const double ratio = b * decay;
  if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
  const double sum = 1.0 + a * decay / (1.0 - ratio);
  return std::pow(sum, 1.0 / p);
}

SeriesClassification classify_phi_series(const GroupPresentation& g, double t, double p, std::size_t kmax) {
  if (!(t > 0.0)) throw DomainError("decay parameter t must be positive");
  if (kmax < 2) throw DomainError("ratio test needs at least two terms");
  SeriesClassification out{p, 0.0, false, {}};
  double partial = 0.0;
  for (std::size_t k = 0; k <= kmax; ++k) {
    const double log_term = log_sphere_size(g, k) - p * t * static_cast<double>(k);
    partial += std::exp(log_term);
    out.partial_sums.push_back(partial);
  }
  const double last = log_sphere_size(g, kmax) - p * t * static_cast<double>(kmax);
  const double prev = log_sphere_size(g, kmax - 1) - p * t * static_cast<double>(kmax - 1);
  out.tail_ratio = std::isinf(last) ? 0.0 : std::exp(last - prev);
  out.convergent = out.tail_ratio < 1.0;
  return out;
}

}  // namespace exotic
