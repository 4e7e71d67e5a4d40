#include "exotic/error.hpp"
#include "exotic/growth.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace exotic;

TEST_SUITE("growth") {
  TEST_CASE("sphere enumeration matches brute-force filtering") {
    struct Case {
      GroupPresentation g;
      std::size_t kmax;
    };
    for (const auto& c : {Case{GroupPresentation::free(2), 7}, Case{GroupPresentation::cyclic(2, 3), 9},
                          Case{GroupPresentation::cyclic(3, 2), 7}, Case{GroupPresentation::free(3), 4}}) {
      for (std::size_t k = 0; k <= c.kmax; ++k) {
        const auto expected = oracle::brute_sphere(c.g, k);
        const auto got = sphere(c.g, k);
        REQUIRE(got.size() == expected.size());
        CHECK(BigInt(expected.size()) == sphere_size(c.g, k));
        CHECK(std::is_sorted(got.begin(), got.end()));
        std::size_t i = 0;
        for (const auto& w : expected) {
          CHECK(std::vector<Letter>(got[i].letters().begin(), got[i].letters().end()) == w);
          ++i;
        }
      }
    }
  }

  TEST_CASE("closed-form sizes") {
    const auto f2 = GroupPresentation::free(2);
    CHECK(sphere_size(f2, 0) == 1);
    CHECK(sphere_size(f2, 3) == 36);
    CHECK(ball_size(f2, 2) == 17);
    CHECK(sphere_size(f2, 40) == BigInt(4) * boost::multiprecision::pow(BigInt(3), 39));
    const auto c23 = GroupPresentation::cyclic(2, 3);
    CHECK(sphere_size(c23, 1) == 3);
    CHECK(sphere_size(c23, 4) == 24);
    CHECK(sphere_size(GroupPresentation::cyclic(2, 2), 9) == 2);
    CHECK(sphere_size(GroupPresentation::free(1), 9) == 2);
  }

  TEST_CASE("spheres partition balls") {
    for (const auto& g : {GroupPresentation::free(2), GroupPresentation::cyclic(4, 3)}) {
      BigInt acc = 0;
      for (std::size_t n = 0; n <= 30; ++n) {
        acc += sphere_size(g, n);
        CHECK(ball_size(g, n) == acc);
      }
      CHECK(ball(g, 3).size() == static_cast<std::size_t>(ball_size(g, 3)));
    }
  }

  TEST_CASE("enumerated and closed-form profiles agree") {
    const auto g = GroupPresentation::cyclic(2, 3);
    const auto a = enumerate_profile(g, 10), b = closed_form_profile(g, 10);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(a.rows[i].sphere == b.rows[i].sphere);
      CHECK(a.rows[i].ball == b.rows[i].ball);
    }
    CHECK(a.source == GrowthSource::Enumerated);
    CHECK(b.source == GrowthSource::ClosedForm);
  }

  TEST_CASE("enumeration cap raises") {
    CHECK_THROWS_AS(sphere(GroupPresentation::free(2), 12, 1000), ResourceLimitError);
  }

  TEST_CASE("growth rates") {
    CHECK(growth_rate(GroupPresentation::free(2)) == 3.0);
    CHECK(growth_rate(GroupPresentation::free(1)) == 1.0);
    CHECK(growth_rate(GroupPresentation::cyclic(2, 3)) == 2.0);
    CHECK(growth_rate(GroupPresentation::cyclic(2, 2)) == 1.0);
    CHECK(growth_rate(GroupPresentation::cyclic(3, 3)) == 4.0);
    CHECK(lp_membership_threshold(GroupPresentation::free(2), 1.0) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    CHECK(lp_membership_threshold(GroupPresentation::free(1), 0.3) == 0.0);
  }

  TEST_CASE("threshold dichotomy at p*(1 +- 0.05)") {
    for (const auto& g : {GroupPresentation::free(2), GroupPresentation::free(4), GroupPresentation::cyclic(3, 3)}) {
      for (double t : {0.3, 1.0, 2.0}) {
        const double ps = lp_membership_threshold(g, t);
        CHECK_FALSE(classify_phi_series(g, t, ps * 0.95).convergent);
        CHECK(classify_phi_series(g, t, ps * 1.05).convergent);
      }
    }
  }

  TEST_CASE("phi norm matches partial sums") {
    const auto g = GroupPresentation::free(2);
    for (double t : {0.7, 1.0}) {
      for (double p : {2.0, 3.0}) {
        double s = 0.0;
        for (std::size_t k = 0; k < 400; ++k) s += static_cast<double>(sphere_size(g, k)) * std::exp(-p * t * k);
        CHECK(phi_lp_norm(g, t, p) == doctest::Approx(std::pow(s, 1.0 / p)).epsilon(1e-12));
      }
    }
    CHECK(std::isinf(phi_lp_norm(g, 0.3, 2.0)));
    CHECK(phi_lp_norm(g, 0.3, INFINITY) == 1.0);
  }
}
