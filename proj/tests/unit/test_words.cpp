#include "exotic/error.hpp"
#include "exotic/words.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <random>

using namespace exotic;

TEST_SUITE("words") {
  TEST_CASE("reduce examples") {
    const auto g = GroupPresentation::free(2);
    const Letter a = g.generator(0), A = g.generator(0, true), b = g.generator(1), B = g.generator(1, true);
    CHECK(reduce(std::vector<Letter>{a, A}, g).is_identity());
    const auto r = reduce(std::vector<Letter>{a, b, B, a}, g);
    CHECK(r.length() == 2);
    CHECK(r == GroupElement::parse("aa", g));

    const auto c = GroupPresentation::cyclic(2, 3);
    const Letter x1 = c.power(0, 1);
    CHECK(reduce(std::vector<Letter>{x1, x1}, c).is_identity());
  }

  TEST_CASE("letters outside the alphabet are malformed") {
    const auto g = GroupPresentation::free(2);
    CHECK_THROWS_AS(reduce(std::vector<Letter>{0, 7}, g), MalformedInputError);
    CHECK_THROWS_AS(GroupElement::parse("az", g), MalformedInputError);
  }

  TEST_CASE("multiply and inverse examples") {
    const auto g = GroupPresentation::free(2);
    CHECK(multiply(GroupElement::parse("ab", g), GroupElement::parse("Ba", g)) == GroupElement::parse("aa", g));
    const auto u = GroupElement::parse("aBa", g);
    CHECK(multiply(u, inverse(u)).is_identity());
    CHECK(inverse(GroupElement::parse("ab", g)) == GroupElement::parse("BA", g));
    CHECK(inverse(GroupElement(g)).is_identity());

    const auto c = GroupPresentation::cyclic(2, 3);
    CHECK(multiply(GroupElement::parse("x1x2", c), GroupElement::parse("x2x3", c)) == GroupElement::parse("x1x3", c));

    const auto c3 = GroupPresentation::cyclic(3, 2);
    CHECK(inverse(GroupElement::parse("x1^1x2^2", c3)) == GroupElement::parse("x2^1x1^2", c3));
  }

  TEST_CASE("presentation mismatch is a domain error") {
    const auto u = GroupElement::parse("a", GroupPresentation::free(2));
    const auto v = GroupElement::parse("a", GroupPresentation::free(3));
    CHECK_THROWS_AS(multiply(u, v), DomainError);
  }

  TEST_CASE("length examples") {
    const auto g = GroupPresentation::free(2);
    CHECK(GroupElement(g).length() == 0);
    CHECK(GroupElement::parse("aBa", g).length() == 3);
    CHECK(multiply(GroupElement::parse("a", g), GroupElement::parse("Ab", g)).length() == 1);
  }

  TEST_CASE("descriptors round trip") {
    CHECK(GroupPresentation::parse("free:2").descriptor() == "free:2");
    CHECK(GroupPresentation::parse("cyclic:2:3").descriptor() == "cyclic:2:3");
    CHECK_THROWS_AS(GroupPresentation::parse("free:0"), MalformedInputError);
    CHECK_THROWS_AS(GroupPresentation::parse("free:65"), MalformedInputError);
    CHECK_THROWS_AS(GroupPresentation::parse("cyclic:257:2"), MalformedInputError);
    CHECK_THROWS_AS(GroupPresentation::parse("torus:2"), MalformedInputError);
    const auto g = GroupPresentation::free(2);
    const auto u = GroupElement::parse("aBab", g);
    CHECK(GroupElement::parse(u.to_string(), g) == u);
  }

  TEST_CASE("idempotence, subadditivity, symmetry on random words up to length 64") {
    std::mt19937_64 rng(11);
    for (const auto& g : {GroupPresentation::free(2), GroupPresentation::free(5), GroupPresentation::cyclic(2, 3),
                          GroupPresentation::cyclic(5, 4)}) {
      for (int i = 0; i < 300; ++i) {
        std::vector<Letter> raw(rng() % 65);
        for (auto& x : raw) x = static_cast<Letter>(rng() % g.alphabet_size());
        const auto r = reduce(raw, g);
        CHECK(reduce(r.letters(), g) == r);
        const auto u = oracle::random_element(g, rng, 64), v = oracle::random_element(g, rng, 64);
        CHECK(multiply(u, v).length() <= u.length() + v.length());
        CHECK(inverse(u).length() == u.length());
      }
    }
  }

  TEST_CASE("group axioms on random triples") {
    std::mt19937_64 rng(12);
    for (const auto& g : {GroupPresentation::free(3), GroupPresentation::cyclic(4, 3)}) {
      for (int i = 0; i < 300; ++i) {
        const auto a = oracle::random_element(g, rng, 20), b = oracle::random_element(g, rng, 20),
                   c = oracle::random_element(g, rng, 20);
        CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
        CHECK(multiply(a, GroupElement(g)) == a);
        CHECK(multiply(GroupElement(g), a) == a);
        CHECK(multiply(inverse(a), a).is_identity());
      }
    }
  }

  TEST_CASE("canonical order is length first, then letter codes") {
    const auto g = GroupPresentation::free(2);
    CHECK(GroupElement::parse("B", g) < GroupElement::parse("aa", g));
    CHECK(GroupElement::parse("a", g) < GroupElement::parse("A", g));
    CHECK(GroupElement(g) < GroupElement::parse("a", g));
  }

  TEST_CASE("append and prepend agree with multiplication") {
    std::mt19937_64 rng(13);
    for (const auto& g : {GroupPresentation::free(2), GroupPresentation::cyclic(3, 3)}) {
      for (int i = 0; i < 200; ++i) {
        const auto u = oracle::random_element(g, rng, 12);
        const Letter x = static_cast<Letter>(rng() % g.alphabet_size());
        const auto gx = GroupElement::from_reduced(Word{x}, g);
        Word w = u.word();
        append_letter(w, x, g);
        CHECK(GroupElement::from_reduced(w, g) == multiply(u, gx));
        w = u.word();
        prepend_letter(w, x, g);
        CHECK(GroupElement::from_reduced(w, g) == multiply(gx, u));
      }
    }
  }
}
