#include "exotic/algebra.hpp"
#include "exotic/error.hpp"
#include "exotic/growth.hpp"
#include "exotic/posdef.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace exotic;

TEST_SUITE("posdef") {
  TEST_CASE("haagerup values and domain") {
    const auto g = GroupPresentation::free(2);
    const auto phi = PosDefFunction::haagerup(g, 1.0);
    CHECK(phi(GroupElement::parse("aB", g)) == doctest::Approx(std::exp(-2.0)));
    CHECK(phi.radial_value(0) == 1.0);
    CHECK(phi.decay() == 1.0);
    CHECK_THROWS_AS(PosDefFunction::haagerup(g, 0.0), DomainError);
    CHECK_THROWS_AS(PosDefFunction::haagerup(g, -1.0), DomainError);
  }

  TEST_CASE("rescaling law on enumerated balls") {
    for (const auto& g : {GroupPresentation::free(2), GroupPresentation::cyclic(3, 3)}) {
      const auto elems = ball(g, 4);
      for (double t0 : {0.2, 1.0}) {
        for (double t : {0.1, 0.3, 3.0}) {
          const auto a = PosDefFunction::haagerup(g, t), b = PosDefFunction::haagerup(g, t0);
          for (const auto& s : elems) CHECK(a(s) == doctest::Approx(std::pow(b(s), t / t0)).epsilon(1e-13));
        }
      }
    }
  }

  TEST_CASE("Gram PSD for haagerup functions") {
    for (const auto& g : {GroupPresentation::free(2), GroupPresentation::cyclic(2, 3)}) {
      for (std::size_t r = 1; r <= 3; ++r) {
        const auto sample = ball(g, r);
        for (double t : {0.1, 0.3, 1.0, 3.0}) {
          const auto rep = gram_psd_check(PosDefFunction::haagerup(g, t), sample);
          CHECK(rep.pass);
          CHECK(rep.dimension == sample.size());
          CHECK(rep.tolerance == doctest::Approx(1e-8 * sample.size()));
        }
      }
    }
  }

  TEST_CASE("Gram check rejects a non positive definite rule") {
    const auto g = GroupPresentation::free(2);
    const auto bad = PosDefFunction::custom(g, [](const GroupElement& s) { return s.is_identity() ? 0.0 : 1.0; }, "bad");
    const auto rep = gram_psd_check(bad, ball(g, 1));
    CHECK_FALSE(rep.pass);
    CHECK(rep.min_eigenvalue == doctest::Approx(-1.0));
    CHECK_THROWS_AS(gram_psd_check(bad, ball(g, 7)), ResourceLimitError);
  }

  TEST_CASE("membership and the exact threshold") {
    const auto g = GroupPresentation::free(2);
    const double ps = std::log(3.0) / 0.3;
    const auto above = haagerup_lp_membership(g, 0.3, 3.7);
    CHECK(above.member);
    CHECK(above.member_of_intersection);
    const auto at = haagerup_lp_membership(g, 0.3, ps);
    CHECK_FALSE(at.member);
    CHECK(at.member_of_intersection);
    const auto below = haagerup_lp_membership(g, 0.3, 3.6);
    CHECK_FALSE(below.member);
    CHECK_FALSE(below.member_of_intersection);
  }

  TEST_CASE("state lower bound") {
    const auto g = GroupPresentation::free(2);
    const auto f = GroupFunction::sphere_indicator(g, 10);
    const auto phi = PosDefFunction::haagerup(g, 0.3);
    const auto est = state_lower_bound(f, phi, 3.7);
    CHECK(est.direction == Direction::CertifiedLower);
    CHECK(est.target == Target::cstar_lp(3.7));
    CHECK(est.value == doctest::Approx(4.0 * std::pow(3.0, 9) * std::exp(-3.0)).epsilon(1e-13));
    CHECK(est.value <= lp_norm(f, 1.0));

    // same value, certified at every larger exponent
    for (double p : {3.8, 5.0, 100.0, oracle::kInf}) {
      const auto e2 = state_lower_bound(f, phi, p);
      CHECK(e2.value == est.value);
      CHECK(e2.target == Target::cstar_lp(p));
    }

    bool thrown = false;
    try {
      state_lower_bound(f, phi, std::log(3.0) / 0.3);
    } catch (const PreconditionError& e) {
      thrown = true;
      REQUIRE(e.p_star().has_value());
      CHECK(*e.p_star() == doctest::Approx(std::log(3.0) / 0.3));
      CHECK(e.member_of_intersection());
    }
    CHECK(thrown);
    CHECK_THROWS_AS(state_lower_bound(f, phi, 2.0), PreconditionError);
  }

  TEST_CASE("state lower bound never exceeds l1 on random nonnegative f") {
    std::mt19937_64 rng(31);
    const auto g = GroupPresentation::free(2);
    const auto elems = ball(g, 3);
    for (int i = 0; i < 30; ++i) {
      std::vector<GroupFunction::Entry> e;
      for (int j = 0; j < 6; ++j) e.emplace_back(elems[rng() % elems.size()], static_cast<double>(rng() % 100) / 10.0);
      const auto f = GroupFunction::sparse(g, e);
      CHECK(state_lower_bound(f, PosDefFunction::haagerup(g, 0.5), 3.0).value <= lp_norm(f, 1.0));
    }
  }

  TEST_CASE("amenable group accepts every p > 0") {
    const auto g = GroupPresentation::free(1);
    CHECK(haagerup_lp_membership(g, 0.1, 1.0).member);
  }
}
