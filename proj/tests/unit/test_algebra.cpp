#include "exotic/algebra.hpp"
#include "exotic/error.hpp"
#include "exotic/growth.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

using namespace exotic;

namespace {

GroupFunction random_function(const GroupPresentation& g, std::mt19937_64& rng, std::size_t n, std::size_t max_len,
                              bool nonnegative) {
  std::vector<GroupFunction::Entry> e;
  std::uniform_real_distribution<double> u(nonnegative ? 0.0 : -1.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(oracle::random_element(g, rng, max_len), u(rng));
  return GroupFunction::sparse(g, std::move(e));
}

std::map<GroupElement, double> as_map(const GroupFunction& f) {
  std::map<GroupElement, double> m;
  const auto fs = f.materialize();
  for (const auto& [s, a] : fs.entries()) m[s] = a;
  return m;
}

double inner(const GroupFunction& a, const GroupFunction& b) {
  return pair(a, TestFunction{[&](const GroupElement& s) { return b(s); }, {}});
}

}  // namespace

TEST_SUITE("algebra") {
  TEST_CASE("descriptors") {
    const auto g = GroupPresentation::free(2);
    CHECK(lp_norm(GroupFunction::parse("sphere:1", g), 1.0) == 4.0);
    CHECK(lp_norm(GroupFunction::parse("ball:2", g), 1.0) == 17.0);
    CHECK(GroupFunction::parse("delta:ab", g)(GroupElement::parse("ab", g)) == 1.0);
    const auto r = GroupFunction::parse("radial:1,0.5", g);
    CHECK(r.is_radial());
    CHECK(r(GroupElement::parse("B", g)) == 0.5);
    const auto s = GroupFunction::parse("sparse:a=2,B=-1,a=1", g);
    CHECK(s(GroupElement::parse("a", g)) == 3.0);
    CHECK(s.support_size() == 2.0);
    CHECK_THROWS_AS(GroupFunction::parse("blob:3", g), MalformedInputError);
  }

  TEST_CASE("convolution matches naive oracle") {
    std::mt19937_64 rng(21);
    for (const auto& g : {GroupPresentation::free(2), GroupPresentation::cyclic(3, 3)}) {
      for (int i = 0; i < 20; ++i) {
        const auto a = random_function(g, rng, 8, 4, false), b = random_function(g, rng, 8, 4, false);
        const auto expected = oracle::naive_convolve(as_map(a), as_map(b));
        const auto got = as_map(convolve(a, b));
        for (const auto& [s, v] : expected) {
          const auto it = got.find(s);
          const double gv = it == got.end() ? 0.0 : it->second;
          CHECK(gv == doctest::Approx(v).epsilon(1e-12).scale(1.0));
        }
        for (const auto& [s, v] : got) CHECK(expected.count(s) == 1);
      }
    }
  }

  TEST_CASE("Young l1 submultiplicativity") {
    std::mt19937_64 rng(22);
    const auto g = GroupPresentation::free(3);
    for (int i = 0; i < 50; ++i) {
      const auto a = random_function(g, rng, 10, 5, false), b = random_function(g, rng, 10, 5, false);
      CHECK(lp_norm(convolve(a, b), 1.0) <= lp_norm(a, 1.0) * lp_norm(b, 1.0) * (1 + 1e-12));
    }
  }

  TEST_CASE("adjoint identity") {
    std::mt19937_64 rng(23);
    for (const auto& g : {GroupPresentation::free(2), GroupPresentation::cyclic(4, 2)}) {
      for (int i = 0; i < 40; ++i) {
        const auto f = random_function(g, rng, 5, 3, false), a = random_function(g, rng, 5, 3, false),
                   h = random_function(g, rng, 5, 3, false);
        const double lhs = inner(convolve(involution(f), a), h);
        const double rhs = inner(a, convolve(f, h));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12).scale(1.0));
      }
    }
  }

  TEST_CASE("radial fast paths agree with expansion up to radius 6") {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const auto& g : {GroupPresentation::free(2), GroupPresentation::cyclic(2, 3)}) {
      for (std::size_t r = 0; r <= 6; ++r) {
        std::vector<double> c(r + 1);
        for (auto& x : c) x = u(rng);
        const auto f = GroupFunction::radial(g, c);
        const auto fs = f.materialize();
        for (double p : {1.0, 2.0, 3.7, oracle::kInf}) {
          CHECK(lp_norm(f, p) == doctest::Approx(lp_norm(fs, p)).epsilon(1e-12));
        }
        CHECK(weighted_norm(f, 2.0, {1.5}) == doctest::Approx(weighted_norm(fs, 2.0, {1.5})).epsilon(1e-12));
        const TestFunction phi{[](const GroupElement& s) { return std::exp(-0.4 * s.length()); },
                               [](std::size_t k) { return std::exp(-0.4 * k); }};
        CHECK(pair(f, phi) == doctest::Approx(pair(fs, TestFunction{phi.point, {}})).epsilon(1e-12).scale(1.0));
        CHECK(lp_norm(add(involution(f).materialize(), scaled(fs, -1.0)), 1.0) <= 1e-12);
        if (r <= 3) {
          const auto h = GroupFunction::sphere_indicator(g, 1);
          auto a = as_map(convolve(f, h));
          const auto b = as_map(convolve(fs, h.materialize()));
          for (const auto& [s, v] : b) CHECK(a[s] == doctest::Approx(v).epsilon(1e-12).scale(1.0));
        }
      }
    }
  }

  TEST_CASE("pairing bounded by l1 norm when |phi| <= 1") {
    std::mt19937_64 rng(25);
    const auto g = GroupPresentation::free(2);
    for (int i = 0; i < 50; ++i) {
      const auto f = random_function(g, rng, 12, 6, false);
      const TestFunction phi{[](const GroupElement& s) { return std::cos(1.3 * s.length()); }, {}};
      CHECK(std::fabs(pair(f, phi)) <= lp_norm(f, 1.0) * (1 + 1e-12));
    }
  }

  TEST_CASE("polynomial weights") {
    const PolynomialWeight w0{0.0}, w1{1.5}, w2{-0.5}, w12{1.0};
    for (std::size_t k = 0; k < 20; ++k) {
      CHECK(w0(k) == 1.0);
      CHECK(w1(k) * w2(k) == doctest::Approx(w12(k)).epsilon(1e-14));
    }
    CHECK(w1(3) == doctest::Approx(8.0));
  }

  TEST_CASE("support cap") {
    const auto g = GroupPresentation::free(2);
    CHECK_THROWS_AS(convolve(GroupFunction::ball_indicator(g, 5), GroupFunction::ball_indicator(g, 5), 1000),
                    ResourceLimitError);
    CHECK_THROWS_AS(GroupFunction::ball_indicator(g, 8).materialize(100), ResourceLimitError);
  }

  TEST_CASE("radial l1 of big spheres uses exact counts") {
    const auto g = GroupPresentation::free(2);
    CHECK(lp_norm(GroupFunction::sphere_indicator(g, 30), 1.0) == doctest::Approx(sphere_size_double(g, 30)));
  }
}
