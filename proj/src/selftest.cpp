#include "exotic/selftest.hpp"

#include "exotic/algebra.hpp"
#include "exotic/certify.hpp"
#include "exotic/growth.hpp"
#include "exotic/opnorm.hpp"
#include "exotic/posdef.hpp"
#include "exotic/simd/kernels.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace exotic {

namespace {

GroupElement random_element(const GroupPresentation& g, std::mt19937_64& rng, std::size_t max_len) {
  std::vector<Letter> raw(rng() % (max_len + 1));
  for (auto& x : raw) x = static_cast<Letter>(rng() % g.alphabet_size());
  return reduce(raw, g);
}

template <class F>
SelftestCheck check(std::string name, F&& body) {
  try {
    std::string detail;
    const bool ok = body(detail);
    return {std::move(name), ok, detail};
  } catch (const std::exception& e) {
    return {std::move(name), false, std::string("threw: ") + e.what()};
  }
}

}  // namespace

std::vector<SelftestCheck> run_selftest() {
  std::vector<SelftestCheck> out;
  const auto free2 = GroupPresentation::free(2);
  const auto cyc = GroupPresentation::cyclic(3, 3);

  out.push_back(check("words.group_axioms", [&](std::string& detail) {
    std::mt19937_64 rng(1);
    for (const auto& g : {free2, cyc}) {
      for (int i = 0; i < 200; ++i) {
        const auto a = random_element(g, rng, 24), b = random_element(g, rng, 24), c = random_element(g, rng, 24);
        if (!(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)))) return detail = "associativity", false;
        if (!multiply(a, inverse(a)).is_identity()) return detail = "inverse", false;
        if (multiply(a, b).length() > a.length() + b.length()) return detail = "subadditivity", false;
        if (!(reduce(a.letters(), g) == a)) return detail = "idempotence", false;
      }
    }
    return true;
  }));

  out.push_back(check("growth.sphere_counts", [&](std::string& detail) {
    for (std::size_t k = 0; k <= 6; ++k) {
      if (BigInt(sphere(free2, k).size()) != sphere_size(free2, k)) return detail = "free:2 k=" + std::to_string(k), false;
    }
    const auto c23 = GroupPresentation::cyclic(2, 3);
    for (std::size_t k = 0; k <= 8; ++k) {
      if (BigInt(sphere(c23, k).size()) != sphere_size(c23, k)) return detail = "cyclic:2:3 k=" + std::to_string(k), false;
    }
    return true;
  }));

  out.push_back(check("growth.threshold_dichotomy", [&](std::string& detail) {
    const double ps = lp_membership_threshold(free2, 1.0);
    const bool ok = !classify_phi_series(free2, 1.0, ps * 0.95).convergent && classify_phi_series(free2, 1.0, ps * 1.05).convergent;
    detail = "p* = " + std::to_string(ps);
    return ok;
  }));

  out.push_back(check("algebra.unit_and_young", [&](std::string& detail) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 20; ++i) {
      std::vector<GroupFunction::Entry> ea, eb;
      for (int j = 0; j < 6; ++j) ea.emplace_back(random_element(free2, rng, 3), 0.25 + static_cast<double>(rng() % 8));
      for (int j = 0; j < 6; ++j) eb.emplace_back(random_element(free2, rng, 3), 0.5 - static_cast<double>(rng() % 3));
      const auto a = GroupFunction::sparse(free2, ea), b = GroupFunction::sparse(free2, eb);
      const auto unit = convolve(a, GroupFunction::delta(GroupElement(free2)));
      if (std::fabs(lp_norm(add(unit, scaled(a, -1.0)), 1.0)) > 1e-12) return detail = "unit law", false;
      if (lp_norm(convolve(a, b), 1.0) > lp_norm(a, 1.0) * lp_norm(b, 1.0) * (1 + 1e-12)) return detail = "young", false;
    }
    return true;
  }));

  out.push_back(check("posdef.gram_psd", [&](std::string& detail) {
    const auto sample = ball(free2, 2);
    for (double t : {0.1, 1.0}) {
      const auto rep = gram_psd_check(PosDefFunction::haagerup(free2, t), sample);
      if (!rep.pass) return detail = "min eigenvalue " + std::to_string(rep.min_eigenvalue), false;
    }
    return true;
  }));

  out.push_back(check("opnorm.bracket", [&](std::string& detail) {
    const auto f = GroupFunction::sphere_indicator(free2, 1);
    PowerBudget b;
    b.radius = 4;
    b.iterations = 30;
    const double lo = lambda_p_lower(f, Exponent(2.0), b).value;
    const double hi = best_reduced_upper(f).value;
    std::ostringstream s;
    s << lo << " <= " << hi;
    detail = s.str();
    return lo <= hi * (1 + 1e-12) && lo > 3.0;
  }));

  out.push_back(check("certify.distinctness_revalidates", [&](std::string& detail) {
    const auto c = distinctness_at(free2, 3.7, 2.0, {10, 0.3});
    const auto r = revalidate(c);
    detail = "margin " + std::to_string(c.margin);
    return c.valid && r.valid && r.sign_agrees;
  }));

  out.push_back(check("simd.variants_agree", [&](std::string& detail) {
    const auto* avx = simd::avx2_kernels();
    if (!avx || !simd::cpu_supports(simd::Isa::Avx2)) return detail = "avx2 unavailable, scalar only", true;
    const auto& sc = simd::scalar_kernels();
    std::mt19937_64 rng(3);
    std::vector<double> x(1003), ya(1003), yb(1003);
    std::vector<std::uint32_t> idx(1003);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = static_cast<double>(rng() % 2000) / 7.0 - 100.0;
      idx[i] = static_cast<std::uint32_t>(rng() % x.size());
    }
    sc.gather(ya.data(), x.data(), idx.data(), x.size());
    avx->gather(yb.data(), x.data(), idx.data(), x.size());
    if (ya != yb) return detail = "gather", false;
    sc.gather_axpy(ya.data(), 0.3, x.data(), idx.data(), x.size());
    avx->gather_axpy(yb.data(), 0.3, x.data(), idx.data(), x.size());
    if (ya != yb) return detail = "gather_axpy", false;
    const double s1 = sc.sum_squares(x.data(), x.size()).value(), s2 = avx->sum_squares(x.data(), x.size()).value();
    if (std::fabs(s1 - s2) > 1e-13 * s1) return detail = "sum_squares", false;
    return true;
  }));

  return out;
}

}  // namespace exotic
