#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "sncay/perm.hpp"

using sncay::Parity;
using sncay::Permutation;
using sncay::compose;
using sncay::conjugate;
using sncay::power;

namespace {

Permutation random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation::from_one_line(images);
}

}  // namespace

// The entire project hangs off this convention: the written product pq
// applies p first.  These three conjugates come out wrong under the other
// convention, so they pin it.
TEST_CASE("product convention anchors") {
  const int n = 13;
  const auto c = Permutation::n_cycle(n);
  const auto t = Permutation::transposition(n, 1, 2);

  SECTION("c^-1 (1 2) c = (2 3)") {
    const auto w = c.inverse() * t * c;
    CHECK(w == Permutation::transposition(n, 2, 3));
    CHECK(w == conjugate(t, c));
  }
  SECTION("c^-2 (1 2) c^2 = (3 4)") {
    const auto w = power(c, -2) * t * power(c, 2);
    CHECK(w == Permutation::transposition(n, 3, 4));
    CHECK(w == conjugate(t, power(c, 2)));
  }
  SECTION("c (1 2) c^-1 = (n 1)") {
    const auto w = c * t * c.inverse();
    CHECK(w == Permutation::transposition(n, 1, n));
    CHECK(w == conjugate(t, c.inverse()));
  }
}

TEST_CASE("compose basics") {
  const auto c = Permutation::n_cycle(5);
  CHECK(c * Permutation::identity(5) == c);
  CHECK(Permutation::identity(5) * c == c);
  CHECK_THROWS_AS(c * Permutation::identity(4), std::invalid_argument);
  CHECK(compose(c, c.inverse()).is_identity());
}

TEST_CASE("inverse") {
  const auto c5 = Permutation::n_cycle(5);
  const auto inv = c5.inverse();
  for (int x = 1; x <= 5; ++x) CHECK(inv(x) == (x == 1 ? 5 : x - 1));
  CHECK(Permutation::transposition(9, 1, 2).inverse() ==
        Permutation::transposition(9, 1, 2));
  CHECK(Permutation::identity(7).inverse() == Permutation::identity(7));
}

TEST_CASE("power") {
  CHECK(power(Permutation::n_cycle(13), 13).is_identity());
  CHECK(power(Permutation::n_cycle(12), 12).is_identity());
  CHECK(power(Permutation::n_cycle(13), -1) == Permutation::n_cycle(13).inverse());
  CHECK(power(Permutation::n_cycle(7), 0).is_identity());
  const auto c = Permutation::n_cycle(9);
  CHECK(power(c, -4) == power(c, 4).inverse());
  CHECK(power(c, 22) == power(c, 22 % 9));
}

TEST_CASE("conjugate relabels cycles") {
  const int n = 13;
  const auto c = Permutation::n_cycle(n);
  CHECK(conjugate(Permutation::transposition(n, 3, 4), power(c, -5)) ==
        Permutation::transposition(n, n - 2, n - 1));
  CHECK(conjugate(Permutation::transposition(n, 1, 2), c.inverse()) ==
        Permutation::transposition(n, 1, n));
  const auto p = Permutation::parse("(1 5 2)(3 9)", n);
  CHECK(conjugate(p, Permutation::identity(n)) == p);
  CHECK_THROWS_AS(conjugate(p, Permutation::identity(5)), std::invalid_argument);
}

TEST_CASE("cycle decomposition") {
  CHECK(Permutation::identity(5).cycles().empty());
  CHECK(Permutation::n_cycle(4).cycles() ==
        std::vector<std::vector<int>>{{1, 2, 3, 4}});

  const auto phi13 = Permutation::phi_involution(13);
  const std::vector<std::vector<int>> expected{{1, 2}, {3, 13}, {4, 12},
                                               {5, 11}, {6, 10}, {7, 9}};
  CHECK(phi13.cycles() == expected);
  CHECK(phi13(8) == 8);
}

TEST_CASE("support, order, parity") {
  const auto c = Permutation::n_cycle(13);
  CHECK(power(c, 5).support().size() == 13);
  CHECK(power(c, 13).support().empty());

  const auto p = Permutation::transposition(5, 1, 2) *
                 Permutation::transposition(5, 3, 4);
  CHECK(p.order() == 2);
  CHECK(p.parity() == Parity::even);
  CHECK(Permutation::transposition(5, 1, 2).parity() == Parity::odd);
  CHECK(Permutation::n_cycle(4).parity() == Parity::odd);
  CHECK(Permutation::n_cycle(5).parity() == Parity::even);
}

TEST_CASE("constructors validate their preconditions") {
  CHECK_THROWS_AS(Permutation::n_cycle(2), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::transposition(5, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::transposition(5, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::phi_involution(2), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_one_line({1, 1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_one_line({1, 5, 3}), std::invalid_argument);
}

TEST_CASE("phi involution") {
  const auto phi5 = Permutation::phi_involution(5);
  CHECK(phi5 == Permutation::parse("(1 2)(3 5)", 5));
  CHECK(phi5(4) == 4);
  CHECK(Permutation::phi_involution(3) == Permutation::transposition(3, 1, 2));

  for (int n = 3; n <= 64; ++n) {
    const auto phi = Permutation::phi_involution(n);
    CHECK((phi * phi).is_identity());
    const auto c = Permutation::n_cycle(n);
    const auto t = Permutation::transposition(n, 1, 2);
    CHECK(conjugate(c, phi) == c.inverse());
    CHECK(conjugate(c.inverse(), phi) == c);
    CHECK(conjugate(t, phi) == t);
  }
}

TEST_CASE("text notation") {
  const auto p = Permutation::parse("(1 2)(3 13)", 13);
  CHECK(p.cycle_string() == "(1 2)(3 13)");
  CHECK(Permutation::parse(p.one_line_string(), 13) == p);
  CHECK(Permutation::identity(6).cycle_string() == "()");
  CHECK(Permutation::parse("()", 6).is_identity());
  CHECK(Permutation::parse("e", 6).is_identity());
  CHECK(Permutation::parse("[2,1,13,12,11,10,9,8,7,6,5,4,3]", 13) ==
        Permutation::phi_involution(13));

  CHECK_THROWS_AS(Permutation::parse("(1 2", 4), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::parse("[1,2]", 4), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::parse("(1 9)", 4), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::parse("(1 2)(2 3)", 4), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::parse("xyz", 4), std::invalid_argument);
}

TEST_CASE("algebra spot checks") {
  std::mt19937_64 rng(0xC0FFEE);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 18);
    const auto p = random_perm(n, rng);
    const auto q = random_perm(n, rng);
    const auto r = random_perm(n, rng);
    CHECK((p * q) * r == p * (q * r));
    CHECK((p * q).parity() == (p.parity() ^ q.parity()));
    CHECK((p * p.inverse()).is_identity());

    // conjugation preserves the cycle type
    auto type_of = [](const Permutation& x) {
      std::vector<std::size_t> lens;
      for (const auto& cyc : x.cycles()) lens.push_back(cyc.size());
      std::sort(lens.begin(), lens.end());
      return lens;
    };
    CHECK(type_of(conjugate(p, q)) == type_of(p));
  }
}
