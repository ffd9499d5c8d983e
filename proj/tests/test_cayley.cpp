#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "sncay/cayley.hpp"

using sncay::BuildOptions;
using sncay::BudgetError;
using sncay::CayleyGraph;
using sncay::GenSet;
using sncay::GraphMode;
using sncay::Permutation;
using sncay::ball;
using sncay::factorial;
using sncay::neighbors;
using sncay::perm_rank;
using sncay::perm_unrank;

TEST_CASE("lehmer ranking") {
  CHECK(perm_rank(Permutation::identity(5)) == 0);
  CHECK(perm_rank(Permutation::from_one_line({5, 4, 3, 2, 1})) ==
        factorial(5) - 1);
  CHECK(perm_unrank(0, 5).is_identity());

  SECTION("exhaustive bijection at n = 6") {
    std::vector<bool> hit(static_cast<std::size_t>(factorial(6)), false);
    for (std::uint64_t r = 0; r < factorial(6); ++r) {
      const auto p = perm_unrank(r, 6);
      CHECK(perm_rank(p) == r);
      hit[static_cast<std::size_t>(r)] = true;
    }
    CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
  }

  SECTION("rank order is one-line lexicographic order") {
    for (std::uint64_t r = 0; r + 1 < factorial(5); ++r)
      CHECK(perm_unrank(r, 5) < perm_unrank(r + 1, 5));
  }

  SECTION("random roundtrip at larger degrees") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
      const int n = 3 + static_cast<int>(rng() % 10);  // up to 12
      std::vector<int> img(static_cast<std::size_t>(n));
      std::iota(img.begin(), img.end(), 1);
      std::shuffle(img.begin(), img.end(), rng);
      const auto p = Permutation::from_one_line(img);
      CHECK(perm_unrank(perm_rank(p), n) == p);
    }
  }

  CHECK_THROWS_AS(perm_unrank(factorial(4), 4), std::invalid_argument);
}

TEST_CASE("neighbor oracle") {
  const int n = 13;
  const auto S = GenSet::standard(n);
  const auto c = Permutation::n_cycle(n);
  const auto t = Permutation::transposition(n, 1, 2);

  CHECK(neighbors(Permutation::identity(n), S) == S.elements);

  const auto nc = neighbors(c, S);
  REQUIRE(nc.size() == 3);
  CHECK(nc[0] == c * c);
  CHECK(nc[1] == Permutation::identity(n));
  CHECK(nc[2] == t * c);

  const auto nci = neighbors(c.inverse(), S);
  CHECK(nci[0] == Permutation::identity(n));
  CHECK(nci[1] == c.inverse() * c.inverse());
  CHECK(nci[2] == t * c.inverse());
}

TEST_CASE("explicit graph small") {
  const auto g4 = CayleyGraph::build_explicit(GenSet::standard(4));
  CHECK(g4.vertex_count() == 24);
  CHECK(g4.edge_count() == 36);
  CHECK(g4.connected());
  CHECK(g4.mode() == GraphMode::explicit_adjacency);

  SECTION("adjacency is symmetric, loop-free and matches the oracle") {
    for (std::uint64_t v = 0; v < g4.vertex_count(); ++v) {
      const auto p = g4.vertex(v);
      const auto expect = neighbors(p, g4.genset());
      const std::uint32_t* r = g4.row(v);
      for (std::size_t j = 0; j < 3; ++j) {
        CHECK(r[j] == g4.rank_of(expect[j]));
        CHECK(r[j] != v);
        // symmetry: v appears in the row of each neighbor
        const std::uint32_t* back = g4.row(r[j]);
        CHECK((back[0] == v || back[1] == v || back[2] == v));
      }
    }
  }
}

TEST_CASE("explicit graph n=8 dimensions") {
  BuildOptions opts;
  opts.workers = 2;
  const auto g8 = CayleyGraph::build_explicit(GenSet::standard(8), opts);
  CHECK(g8.vertex_count() == 40320);
  CHECK(g8.edge_count() == 60480);
  CHECK(g8.connected());
}

TEST_CASE("right translation preserves adjacency") {
  const int n = 7;
  const auto S = GenSet::standard(n);
  std::mt19937_64 rng(11);
  auto rand_perm = [&] {
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 1);
    std::shuffle(img.begin(), img.end(), rng);
    return Permutation::from_one_line(img);
  };
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = rand_perm();
    const auto h = rand_perm();
    for (const auto& s : S.elements) {
      // g ~ s*g, so g*h ~ (s*g)*h
      const auto lhs = (s * g) * h;
      const auto nb = neighbors(g * h, S);
      CHECK(std::find(nb.begin(), nb.end(), lhs) != nb.end());
    }
  }
}

TEST_CASE("graph build mode selection") {
  CHECK(CayleyGraph::build(GenSet::standard(13)).mode() ==
        GraphMode::implicit_oracle);
  CHECK(CayleyGraph::build(GenSet::standard(6)).mode() ==
        GraphMode::explicit_adjacency);

  SECTION("vertex ceiling gates n = 11 behind allow_big") {
    BuildOptions opts;
    CHECK(CayleyGraph::build(GenSet::standard(11), opts).mode() ==
          GraphMode::implicit_oracle);
  }

  SECTION("budget refusal names the required bytes") {
    BuildOptions tight;
    tight.memory_budget = 1024;
    try {
      CayleyGraph::build_explicit(GenSet::standard(6), tight);
      FAIL("expected a budget refusal");
    } catch (const BudgetError& err) {
      CHECK(err.required_bytes == 720ull * 3 * 4);
      CHECK(std::string(err.what()).find(std::to_string(err.required_bytes)) !=
            std::string::npos);
    }
  }

  SECTION("implicit graphs refuse adjacency operations") {
    const auto g = CayleyGraph::implicit(GenSet::standard(13));
    CHECK(g.vertex_count() == factorial(13));
    CHECK_THROWS_AS(g.edge_count(), std::logic_error);
    CHECK_THROWS_AS(g.row(0), std::logic_error);
  }
}

TEST_CASE("custom set closure universe") {
  const auto c = Permutation::n_cycle(3);
  std::vector<Permutation> gens = {c, c.inverse()};
  // embed the 3-cycle into S_13: a tiny subgroup universe
  std::vector<int> img(13);
  std::iota(img.begin(), img.end(), 1);
  img[0] = 2; img[1] = 3; img[2] = 1;
  const auto c13 = Permutation::from_one_line(img);
  const auto S = GenSet::custom(13, {c13, c13.inverse()});

  const auto g = CayleyGraph::build_explicit(S);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 3);
  CHECK(g.connected());
  CHECK(g.vertex(0).is_identity());
  CHECK(g.rank_of(c13) < 3);
}

TEST_CASE("balls") {
  const auto S13 = GenSet::standard(13);
  const auto e13 = Permutation::identity(13);
  CHECK(ball(S13, e13, 0).size() == 1);
  CHECK(ball(S13, e13, 1).size() == 4);
  CHECK(ball(S13, e13, 2).size() == 10);

  const auto b = ball(GenSet::standard(3), Permutation::identity(3), 2);
  CHECK(b.size() == 6);  // all of S_3

  // distances are exact
  const auto b2 = ball(S13, e13, 2);
  CHECK(b2.front().first == e13);
  CHECK(b2.front().second == 0);
  CHECK(b2.back().second == 2);
}

TEST_CASE("local structure of the identity ball") {
  for (int n : {5, 6, 9, 13, 20}) {
    const auto rep = sncay::verify_local_structure(n);
    INFO("n = " << n << " " << rep.detail);
    CHECK(rep.applicable);
    CHECK(rep.pass);
  }
  CHECK_FALSE(sncay::verify_local_structure(4).applicable);
  CHECK_FALSE(sncay::verify_local_structure(3).applicable);
}

TEST_CASE("edge dump is deterministic and sorted") {
  const auto g = CayleyGraph::build_explicit(GenSet::standard(4));
  std::ostringstream a, b;
  g.dump_edges(a);
  g.dump_edges(b);
  CHECK(a.str() == b.str());

  std::istringstream in(a.str());
  std::uint64_t pu = 0, pv = 0;
  std::uint64_t u, v;
  std::size_t lines = 0;
  while (in >> u >> v) {
    CHECK(u < v);
    CHECK((u > pu || (u == pu && v > pv) || lines == 0));
    pu = u;
    pv = v;
    ++lines;
  }
  CHECK(lines == g.edge_count());
}

TEST_CASE("adjacency fill is worker-count independent") {
  BuildOptions w1, w4;
  w1.workers = 1;
  w4.workers = 4;
  const auto a = CayleyGraph::build_explicit(GenSet::standard(7), w1);
  const auto b = CayleyGraph::build_explicit(GenSet::standard(7), w4);
  for (std::uint64_t v = 0; v < a.vertex_count(); ++v)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(a.row(v)[j] == b.row(v)[j]);
}
