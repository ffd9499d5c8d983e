#include <catch2/catch_amalgamated.hpp>

#include "sncay/genset.hpp"

using sncay::GenSet;
using sncay::Permutation;
using sncay::Word;
using sncay::check_relations;
using sncay::closure;
using sncay::evaluate_word;

TEST_CASE("standard and variant sets") {
  const auto s3 = GenSet::standard(3);
  REQUIRE(s3.size() == 3);
  CHECK(s3.elements[0] == Permutation::parse("(1 2 3)", 3));
  CHECK(s3.elements[1] == Permutation::parse("(1 3 2)", 3));
  CHECK(s3.elements[2] == Permutation::parse("(1 2)", 3));

  CHECK(GenSet::variant(13, 1).elements == GenSet::standard(13).elements);
  CHECK(GenSet::variant(13, 3).elements[2] ==
        Permutation::transposition(13, 3, 4));

  CHECK_THROWS_AS(GenSet::standard(2), std::invalid_argument);
  CHECK_THROWS_AS(GenSet::variant(13, 0), std::invalid_argument);
  CHECK_THROWS_AS(GenSet::variant(13, 13), std::invalid_argument);
}

TEST_CASE("construction rejects bad sets") {
  const int n = 5;
  const auto c = Permutation::n_cycle(n);
  const auto t = Permutation::transposition(n, 1, 2);

  // identity inside
  CHECK_THROWS_AS(GenSet::custom(n, {Permutation::identity(n), t}),
                  std::invalid_argument);
  // missing inverse
  CHECK_THROWS_AS(GenSet::custom(n, {c, t}), std::invalid_argument);
  // duplicate
  CHECK_THROWS_AS(GenSet::custom(n, {t, t}), std::invalid_argument);
  // degree mismatch
  CHECK_THROWS_AS(GenSet::custom(n, {Permutation::transposition(4, 1, 2)}),
                  std::invalid_argument);
  // involutions are their own inverses, so this is fine
  CHECK_NOTHROW(GenSet::custom(n, {t}));
  CHECK_NOTHROW(GenSet::custom(n, {c, c.inverse(), t}));
}

TEST_CASE("shape detection") {
  const auto std13 = GenSet::standard(13);
  const auto shape = std13.cycle_pair_and_involution();
  REQUIRE(shape.has_value());
  CHECK((*shape)[0] == 0);  // c is lex-smaller than c^-1
  CHECK((*shape)[1] == 1);
  CHECK((*shape)[2] == 2);

  const auto t = Permutation::transposition(5, 1, 2);
  const auto u = Permutation::transposition(5, 3, 4);
  CHECK_FALSE(GenSet::custom(5, {t, u}).cycle_pair_and_involution().has_value());
}

TEST_CASE("word parsing and evaluation") {
  CHECK(evaluate_word(Word{}, 5).is_identity());
  CHECK(evaluate_word(Word::parse(""), 5).is_identity());

  // c- t c = (2 3): the leftmost letter applies first
  CHECK(evaluate_word(Word::parse("c- t c"), 13) ==
        Permutation::transposition(13, 2, 3));
  CHECK(evaluate_word(Word::parse("t t"), 13).is_identity());
  CHECK(evaluate_word(Word::parse("c^-2 t c^2"), 13) ==
        Permutation::transposition(13, 3, 4));
  CHECK(evaluate_word(Word::parse("c^3"), 5) ==
        power(Permutation::n_cycle(5), 3));

  const auto w = Word::parse("c t c^-2 t c^2 t c^-2 t c");
  CHECK(w.length() == 12);
  CHECK(Word::parse(w.str()).letters == w.letters);

  CHECK_THROWS_AS(Word::parse("c^0"), std::invalid_argument);
  CHECK_THROWS_AS(Word::parse("q"), std::invalid_argument);
}

TEST_CASE("word concatenation is multiplicative") {
  const auto a = Word::parse("c t c- c t");
  const auto b = Word::parse("t c^2 t c-");
  Word ab;
  ab.letters = a.letters;
  ab.letters.insert(ab.letters.end(), b.letters.begin(), b.letters.end());
  for (int n : {3, 4, 5, 8, 13, 20})
    CHECK(evaluate_word(ab, n) == evaluate_word(a, n) * evaluate_word(b, n));
}

TEST_CASE("cycle relations across degrees") {
  auto held = [](int n, const std::string& id) {
    for (const auto& r : check_relations(n))
      if (r.id == id) return r;
    FAIL("unknown relation id " + id);
    return sncay::RelationResult{};
  };

  SECTION("all five hold for 4 <= n <= 64") {
    for (int n = 4; n <= 64; ++n) {
      for (const auto& r : check_relations(n)) {
        INFO("n=" << n << " relation " << r.id);
        CHECK(r.applicable);
        CHECK(r.holds);
      }
    }
  }

  SECTION("n = 3: only the six-block words apply") {
    CHECK_FALSE(held(3, "A(1,-2,2,-2,1)").applicable);
    CHECK_FALSE(held(3, "B+(2,-2,2,-2)").applicable);
    CHECK_FALSE(held(3, "B-(-2,2,-2,2)").applicable);
    CHECK(held(3, "B+(1,-1,1,-1,1,-1)").holds);
    CHECK(held(3, "B-(-1,1,-1,1,-1,1)").holds);
  }

  SECTION("the four-block words genuinely fail at n = 3") {
    // the floor is honest, not decorative
    CHECK_FALSE(evaluate_word(Word::parse("c^-2 t c^2 t c^-2 t c^2 t"), 3)
                    .is_identity());
  }
}

TEST_CASE("closure enumeration") {
  const auto s4 = GenSet::standard(4);
  const auto r4 = closure(s4.elements);
  REQUIRE_FALSE(r4.overflowed);
  CHECK(r4.elements.size() == 24);
  CHECK(r4.elements.front().is_identity());

  // discovery order is deterministic: identity, then its products in
  // generator order
  CHECK(r4.elements[1] == s4.elements[0]);
  CHECK(r4.elements[2] == s4.elements[1]);
  CHECK(r4.elements[3] == s4.elements[2]);

  const auto c3 = Permutation::n_cycle(3);
  CHECK(closure({c3, c3.inverse()}).elements.size() == 3);

  for (int n = 3; n <= 8; ++n) {
    std::uint64_t fact = 1;
    for (int k = 2; k <= n; ++k) fact *= static_cast<std::uint64_t>(k);
    CHECK(closure(GenSet::standard(n).elements).elements.size() == fact);
  }
}

TEST_CASE("closure cap overflow is explicit") {
  const auto s5 = GenSet::standard(5);
  const auto r = closure(s5.elements, 50);
  CHECK(r.overflowed);
  CHECK(r.elements.empty());
}
