#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sncay/cayley.hpp"
#include "sncay/genset.hpp"
#include "sncay/parallel.hpp"
#include "sncay/perm.hpp"

namespace sncay {

// Vertex bijection of the form x -> left * x * right.  Closed under
// composition and inverse; covers the identity, inn(g) = (g^-1, g),
// right translation (e, h) and left translation (g, e).
struct TwoSidedMap {
  Permutation left, right;

  static TwoSidedMap identity(int n) {
    return {Permutation::identity(n), Permutation::identity(n)};
  }
  static TwoSidedMap inner(const Permutation& g) { return {g.inverse(), g}; }
  static TwoSidedMap right_mul(const Permutation& h) {
    return {Permutation::identity(h.degree()), h};
  }
  static TwoSidedMap left_mul(const Permutation& g) {
    return {g, Permutation::identity(g.degree())};
  }

  Permutation apply(const Permutation& x) const { return left * x * right; }

  // this applied first, then o
  TwoSidedMap then(const TwoSidedMap& o) const {
    return {o.left * left, right * o.right};
  }

  bool operator==(const TwoSidedMap&) const = default;
};

// Edge preservation on the full explicit graph.
inline bool preserves_adjacency(const TwoSidedMap& m, const CayleyGraph& g) {
  const std::uint64_t vcount = g.vertex_count();
  for (std::uint64_t v = 0; v < vcount; ++v) {
    const auto pv = g.vertex(v);
    const auto mv = m.apply(pv);
    const auto nb = neighbors(mv, g.genset());
    for (std::size_t j = 0; j < g.valency(); ++j) {
      const auto mw = m.apply(g.vertex(g.row(v)[j]));
      if (std::find(nb.begin(), nb.end(), mw) == nb.end()) return false;
    }
  }
  return true;
}

// Edge preservation on every edge incident to the radius-r ball of e;
// the sound large-degree check.
inline bool preserves_adjacency_on_ball(const TwoSidedMap& m, const GenSet& S,
                                        int radius) {
  for (const auto& [v, d] : ball(S, Permutation::identity(S.degree), radius)) {
    const auto mv = m.apply(v);
    const auto nb = neighbors(mv, S);
    for (const auto& s : S.elements) {
      const auto mw = m.apply(s * v);
      if (std::find(nb.begin(), nb.end(), mw) == nb.end()) return false;
    }
  }
  return true;
}

// A graph automorphism as an explicit rank-image table, with the two-sided
// form attached when recognized.
struct AutMap {
  std::vector<std::uint32_t> images;
  std::optional<TwoSidedMap> form;
};

struct StabSearchStats {
  std::uint64_t assignments = 0;
  std::uint64_t branches = 0;
  std::uint64_t prunes = 0;
  std::uint64_t refinement_rounds = 0;
  std::int64_t wall_millis = 0;  // excluded from deterministic reports
};

namespace detail {

constexpr std::uint32_t kUnset32 = 0xFFFFFFFFu;

// Iterated color refinement with individualized anchors, one side at a time.
//
// Colors are 64-bit hashes refined by color'[v] = mix(color[v], sorted
// neighbor colors); the anchors start individualized, everything else
// uniform.  Equal colors mean "same iterated local structure relative to
// the anchors", so any automorphism sending the source anchors to the
// target anchors maps each vertex to a target vertex of equal color: the
// colors are a sound pruning invariant.  Hash collisions can only merge
// classes, which weakens pruning but never excludes a true automorphism
// (every completed map is edge-verified anyway).
//
// The source side is refined once, recording a per-round order-independent
// accumulator of the color multiset.  Target sides then replay the same
// number of rounds and die at the first round whose accumulator differs:
// for a true automorphism the color multisets agree round by round.

inline std::uint64_t mix64(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  h *= 0xBF58476D1CE4E5B9ull;
  return h ^ (h >> 29);
}

struct SourceRefinement {
  std::vector<std::uint64_t> colors;
  std::vector<std::uint64_t> round_accumulators;
  bool discrete = false;
};

inline void refine_round(const CayleyGraph& g,
                         const std::vector<std::uint64_t>& cur,
                         std::vector<std::uint64_t>& next,
                         std::uint64_t& accumulator) {
  const auto vcount = static_cast<std::size_t>(g.vertex_count());
  const std::size_t k = g.valency();
  std::uint64_t acc = 0;
  for (std::size_t v = 0; v < vcount; ++v) {
    std::array<std::uint64_t, 4> nb{};
    const std::uint32_t* row = g.row(static_cast<std::uint64_t>(v));
    for (std::size_t j = 0; j < k; ++j) nb[j] = cur[row[j]];
    std::sort(nb.begin(), nb.begin() + static_cast<std::ptrdiff_t>(k));
    std::uint64_t h = mix64(0x243F6A8885A308D3ull, cur[v]);
    for (std::size_t j = 0; j < k; ++j) h = mix64(h, nb[j]);
    next[v] = h;
    acc += mix64(0x452821E638D01377ull, h);
  }
  accumulator = acc;
}

inline std::vector<std::uint64_t> anchor_colors(
    std::size_t vcount, const std::vector<std::uint32_t>& anchors) {
  std::vector<std::uint64_t> colors(vcount, 0);
  for (std::size_t i = 0; i < anchors.size(); ++i)
    colors[anchors[i]] = i + 1;
  return colors;
}

inline SourceRefinement refine_source(const CayleyGraph& g,
                                      const std::vector<std::uint32_t>& anchors,
                                      StabSearchStats* stats = nullptr) {
  const auto vcount = static_cast<std::size_t>(g.vertex_count());
  SourceRefinement out;
  out.colors = anchor_colors(vcount, anchors);
  std::vector<std::uint64_t> next(vcount);
  std::vector<std::uint64_t> scratch;
  std::size_t classes = anchors.size() + 1;
  while (true) {
    if (stats) ++stats->refinement_rounds;
    std::uint64_t acc = 0;
    refine_round(g, out.colors, next, acc);
    out.colors.swap(next);
    out.round_accumulators.push_back(acc);

    scratch = out.colors;
    std::sort(scratch.begin(), scratch.end());
    const auto distinct = static_cast<std::size_t>(
        std::unique(scratch.begin(), scratch.end()) - scratch.begin());
    if (distinct == vcount) {
      out.discrete = true;
      return out;
    }
    if (distinct == classes) return out;  // partition stable, not discrete
    classes = distinct;
  }
}

// Runs the same number of rounds against the cached source; nullopt when an
// accumulator mismatch proves no automorphism realizes the correspondence.
inline std::optional<std::vector<std::uint64_t>> refine_target(
    const CayleyGraph& g, const std::vector<std::uint32_t>& anchors,
    const SourceRefinement& src, StabSearchStats* stats = nullptr) {
  const auto vcount = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::uint64_t> colors = anchor_colors(vcount, anchors);
  std::vector<std::uint64_t> next(vcount);
  for (const std::uint64_t expected : src.round_accumulators) {
    if (stats) ++stats->refinement_rounds;
    std::uint64_t acc = 0;
    refine_round(g, colors, next, acc);
    colors.swap(next);
    if (acc != expected) return std::nullopt;
  }
  return colors;
}

inline bool verify_table(const CayleyGraph& g,
                         const std::vector<std::uint32_t>& img) {
  const std::uint64_t vcount = g.vertex_count();
  const std::size_t k = g.valency();
  for (std::uint64_t v = 0; v < vcount; ++v) {
    const std::uint32_t* vn = g.row(v);
    const std::uint32_t* wn = g.row(img[static_cast<std::size_t>(v)]);
    for (std::size_t j = 0; j < k; ++j) {
      const std::uint32_t x = img[vn[j]];
      bool in_row = false;
      for (std::size_t m = 0; m < k; ++m) in_row |= wn[m] == x;
      if (!in_row) return false;
    }
  }
  return true;
}

// Anchored propagation: seeds pin e (or a candidate image of e) and a
// bijection of its neighborhood, then a FIFO worklist forces or branches
// the images of unmapped neighbors, pruning on color mismatches and on any
// mismatch of mapped-neighbor image sets.  Completed maps are verified
// edge-exhaustively before being reported.
class AnchoredSearch {
 public:
  AnchoredSearch(const CayleyGraph& g, const std::uint64_t* src_colors,
                 const std::uint64_t* tgt_colors, std::vector<AutMap>& results,
                 StabSearchStats& stats)
      : g_(g),
        src_colors_(src_colors),
        tgt_colors_(tgt_colors),
        results_(results),
        stats_(stats),
        vcount_(g.vertex_count()),
        valency_(g.valency()),
        img_(static_cast<std::size_t>(vcount_), kUnset32),
        used_(static_cast<std::size_t>(vcount_), 0) {
    assigned_.reserve(static_cast<std::size_t>(vcount_));
  }

  void run(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& seed) {
    for (const auto& [u, w] : seed)
      if (!assign(u, w)) return;
    search();
  }

 private:
  bool assign(std::uint32_t u, std::uint32_t w) {
    if (img_[u] != kUnset32) return img_[u] == w;
    if (used_[w] || src_colors_[u] != tgt_colors_[w]) {
      ++stats_.prunes;
      return false;
    }
    // forward check: already-mapped neighbors of u must land in N(w)
    const std::uint32_t* un = g_.row(u);
    const std::uint32_t* wn = g_.row(w);
    for (std::size_t j = 0; j < valency_; ++j) {
      const std::uint32_t x = img_[un[j]];
      if (x == kUnset32) continue;
      bool in_row = false;
      for (std::size_t m = 0; m < valency_; ++m) in_row |= wn[m] == x;
      if (!in_row) {
        ++stats_.prunes;
        return false;
      }
    }
    img_[u] = w;
    used_[w] = 1;
    assigned_.push_back(u);
    ++stats_.assignments;
    return true;
  }

  void undo_to(std::size_t mark) {
    while (assigned_.size() > mark) {
      const std::uint32_t u = assigned_.back();
      assigned_.pop_back();
      used_[img_[u]] = 0;
      img_[u] = kUnset32;
    }
  }

  void search() {
    while (head_ < assigned_.size()) {
      const std::uint32_t v = assigned_[head_++];
      const std::uint32_t w = img_[v];
      const std::uint32_t* vn = g_.row(v);
      const std::uint32_t* wn = g_.row(w);

      std::array<std::uint32_t, 8> unmapped{};
      std::size_t u_count = 0;
      for (std::size_t j = 0; j < valency_; ++j) {
        const std::uint32_t u = vn[j];
        const std::uint32_t x = img_[u];
        if (x == kUnset32) {
          unmapped[u_count++] = u;
          continue;
        }
        bool in_row = false;
        for (std::size_t m = 0; m < valency_; ++m) in_row |= wn[m] == x;
        if (!in_row) {
          ++stats_.prunes;
          return;
        }
      }
      if (u_count == 0) continue;

      // free targets: neighbors of w not already images of v's neighbors
      std::array<std::uint32_t, 8> targets{};
      std::size_t t_count = 0;
      for (std::size_t m = 0; m < valency_; ++m) {
        const std::uint32_t t = wn[m];
        bool taken = false;
        for (std::size_t j = 0; j < valency_; ++j)
          taken |= img_[vn[j]] == t;
        if (!taken) targets[t_count++] = t;
      }
      if (t_count != u_count) {
        ++stats_.prunes;
        return;
      }
      // a free target used elsewhere can never get its preimage from N(v)
      for (std::size_t m = 0; m < t_count; ++m) {
        if (used_[targets[m]]) {
          ++stats_.prunes;
          return;
        }
      }

      std::sort(unmapped.begin(), unmapped.begin() + u_count);
      std::sort(targets.begin(), targets.begin() + t_count);

      if (u_count == 1) {
        if (!assign(unmapped[0], targets[0])) return;
        continue;
      }

      // branch over the bijections, lexicographic in the target tuple
      std::array<std::uint32_t, 8> perm = targets;
      const std::size_t mark = assigned_.size();
      const std::size_t head_mark = head_;
      do {
        ++stats_.branches;
        bool ok = true;
        for (std::size_t i = 0; i < u_count && ok; ++i)
          ok = assign(unmapped[i], perm[i]);
        if (ok) search();
        undo_to(mark);
        head_ = head_mark;
      } while (std::next_permutation(perm.begin(), perm.begin() + u_count));
      return;
    }

    if (assigned_.size() != vcount_) return;  // unreachable in connected graphs
    if (!verify_table(g_, img_)) return;
    AutMap found;
    found.images = img_;
    results_.push_back(std::move(found));
  }

  const CayleyGraph& g_;
  const RefinedPair& colors_;
  std::vector<AutMap>& results_;
  StabSearchStats& stats_;
  std::uint64_t vcount_;
  std::size_t valency_;
  std::vector<std::uint32_t> img_;
  std::vector<std::uint8_t> used_;
  std::vector<std::uint32_t> assigned_;
  std::size_t head_ = 0;
};

// Completes one anchor candidate: infeasible colorings die immediately,
// discrete ones force the whole map in one pass, anything in between goes
// through the branching propagation.
inline void run_candidate(
    const CayleyGraph& g, const RefinedPair& colors,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& seed,
    std::vector<AutMap>& results, StabSearchStats& stats) {
  if (!colors.feasible) {
    ++stats.prunes;
    return;
  }
  if (colors.discrete) {
    const auto vcount = static_cast<std::size_t>(g.vertex_count());
    std::vector<std::uint32_t> target_of_class(colors.classes, kUnset32);
    for (std::size_t w = 0; w < vcount; ++w)
      target_of_class[colors.tgt[w]] = static_cast<std::uint32_t>(w);
    std::vector<std::uint32_t> img(vcount);
    for (std::size_t u = 0; u < vcount; ++u)
      img[u] = target_of_class[colors.src[u]];
    stats.assignments += vcount;
    for (const auto& [u, w] : seed)
      if (img[u] != w) {
        ++stats.prunes;
        return;
      }
    if (!verify_table(g, img)) {
      ++stats.prunes;
      return;
    }
    AutMap found;
    found.images = std::move(img);
    results.push_back(std::move(found));
    return;
  }
  AnchoredSearch engine(g, colors, results, stats);
  engine.run(seed);
}

inline std::vector<std::vector<std::size_t>> index_permutations(std::size_t k) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do {
    out.push_back(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

}  // namespace detail

// The rank table of a two-sided map over an explicit graph.
inline std::vector<std::uint32_t> two_sided_table(const CayleyGraph& g,
                                                  const TwoSidedMap& m) {
  const std::uint64_t vcount = g.vertex_count();
  std::vector<std::uint32_t> table(static_cast<std::size_t>(vcount));
  for (std::uint64_t v = 0; v < vcount; ++v)
    table[static_cast<std::size_t>(v)] =
        static_cast<std::uint32_t>(g.rank_of(m.apply(g.vertex(v))));
  return table;
}

struct StabilizerResult {
  int n = 0;
  std::vector<AutMap> elements;  // sorted by image table
  std::uint64_t aut_order = 0;   // n! * |elements|
  StabSearchStats stats;
};

// Complete point stabilizer of the identity vertex: for each of the <= k!
// images of N(e), refine the joint coloring and complete by propagation.
// Deterministic: seeds, branches and the final ordering are all fixed, so
// the result is independent of the worker count.
inline StabilizerResult stabilizer_search(const CayleyGraph& g,
                                          unsigned workers = 1) {
  if (!g.is_explicit())
    throw std::invalid_argument(
        "stabilizer search needs an explicit-mode graph");
  if (!g.connected())
    throw std::invalid_argument("stabilizer search needs a connected graph");
  if (g.valency() > 4)
    throw std::invalid_argument("seed enumeration limited to valency <= 4");

  const std::uint32_t root = 0;  // identity has rank 0
  const std::size_t k = g.valency();

  const auto seeds = detail::index_permutations(k);
  std::vector<std::vector<AutMap>> found(seeds.size());
  std::vector<StabSearchStats> stats(seeds.size());

  for_each_job(seeds.size(), workers, [&](std::size_t job) {
    const auto& pi = seeds[job];
    std::vector<std::uint32_t> src_anchors{root}, tgt_anchors{root};
    for (std::size_t j = 0; j < k; ++j) {
      src_anchors.push_back(g.row(root)[j]);
      tgt_anchors.push_back(g.row(root)[pi[j]]);
    }
    const auto colors =
        detail::wl_refine_pair(g, src_anchors, tgt_anchors, &stats[job]);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> seed;
    for (std::size_t i = 0; i < src_anchors.size(); ++i)
      seed.emplace_back(src_anchors[i], tgt_anchors[i]);
    detail::run_candidate(g, colors, seed, found[job], stats[job]);
  });

  StabilizerResult result;
  result.n = g.degree();
  for (std::size_t job = 0; job < seeds.size(); ++job) {
    for (auto& m : found[job]) result.elements.push_back(std::move(m));
    result.stats.assignments += stats[job].assignments;
    result.stats.branches += stats[job].branches;
    result.stats.prunes += stats[job].prunes;
    result.stats.refinement_rounds += stats[job].refinement_rounds;
  }
  std::sort(result.elements.begin(), result.elements.end(),
            [](const AutMap& a, const AutMap& b) { return a.images < b.images; });
  result.aut_order = factorial(result.n) * result.elements.size();

  // recognize the closed forms that always show up
  const auto id_table = two_sided_table(g, TwoSidedMap::identity(g.degree()));
  const auto inn_phi =
      TwoSidedMap::inner(Permutation::phi_involution(g.degree()));
  const auto inn_phi_table = two_sided_table(g, inn_phi);
  for (auto& m : result.elements) {
    if (m.images == id_table) m.form = TwoSidedMap::identity(g.degree());
    else if (m.images == inn_phi_table) m.form = inn_phi;
  }
  return result;
}

// Every automorphism of the graph, by running the anchored search from
// every candidate image of e with every neighborhood bijection.  The
// vertex-transitivity of the graph is deliberately NOT assumed; this is the
// oracle that validates the n! * |stabilizer| order formula.
inline std::vector<AutMap> bruteforce_aut(const CayleyGraph& g,
                                          unsigned workers = 1,
                                          StabSearchStats* stats_out = nullptr) {
  if (!g.is_explicit())
    throw std::invalid_argument("bruteforce needs an explicit-mode graph");
  const std::uint64_t vcount = g.vertex_count();
  if (vcount > 5040)
    throw std::invalid_argument("bruteforce limited to 5040 vertices");
  if (g.valency() > 4)
    throw std::invalid_argument("seed enumeration limited to valency <= 4");

  const std::size_t k = g.valency();
  const std::size_t v_sz = static_cast<std::size_t>(vcount);
  const auto perms = detail::index_permutations(k);

  std::vector<std::vector<AutMap>> found(v_sz);
  std::vector<StabSearchStats> stats(v_sz);

  for_each_job(v_sz, workers, [&](std::size_t wv) {
    const auto w = static_cast<std::uint32_t>(wv);
    for (const auto& pi : perms) {
      std::vector<std::uint32_t> src_anchors{0}, tgt_anchors{w};
      for (std::size_t j = 0; j < k; ++j) {
        src_anchors.push_back(g.row(0)[j]);
        tgt_anchors.push_back(g.row(w)[pi[j]]);
      }
      const auto colors =
          detail::wl_refine_pair(g, src_anchors, tgt_anchors, &stats[wv]);
      std::vector<std::pair<std::uint32_t, std::uint32_t>> seed;
      for (std::size_t i = 0; i < src_anchors.size(); ++i)
        seed.emplace_back(src_anchors[i], tgt_anchors[i]);
      detail::run_candidate(g, colors, seed, found[wv], stats[wv]);
    }
  });

  std::vector<AutMap> out;
  for (std::size_t wv = 0; wv < v_sz; ++wv) {
    for (auto& m : found[wv]) out.push_back(std::move(m));
    if (stats_out) {
      stats_out->assignments += stats[wv].assignments;
      stats_out->branches += stats[wv].branches;
      stats_out->prunes += stats[wv].prunes;
      stats_out->refinement_rounds += stats[wv].refinement_rounds;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const AutMap& a, const AutMap& b) { return a.images < b.images; });
  return out;
}

// ---------------------------------------------------------------------------
// Aut(G, S) witnesses: group elements g with g^-1 S g = S.

// Closed-form solver for sets {c, c^-1, (x y)} with c the standard n-cycle.
// Any witness must fix the transposition's point pair setwise and conjugate
// c to c^{+-1}; each of the <= 4 (anchor, sign) choices determines the
// witness pointwise through phi(k+1) = phi(k) +- 1 (mod n).  O(n).
inline std::vector<Permutation> aut_G_S_fast(int n, const GenSet& S) {
  if (S.degree != n) throw std::invalid_argument("degree mismatch");
  const auto shape = S.cycle_pair_and_involution();
  if (!shape || S.elements[(*shape)[0]] != Permutation::n_cycle(n))
    throw std::invalid_argument(
        "closed-form solver needs the set {c, c^-1, transposition}");
  const auto& tau = S.elements[(*shape)[2]];
  const auto tau_pts = tau.support();
  if (tau_pts.size() != 2)
    throw std::invalid_argument(
        "closed-form solver needs the set {c, c^-1, transposition}");
  const int x = tau_pts[0], y = tau_pts[1];

  std::vector<Permutation> out;
  for (int sign : {+1, -1}) {
    for (const auto& [a, b] : {std::pair{x, y}, std::pair{y, x}}) {
      // phi(x) = a, phi(k+1) = phi(k) + sign, wrapping in 1..n
      std::vector<int> images(static_cast<std::size_t>(n));
      int val = a;
      for (int step = 0; step < n; ++step) {
        const int point = (x - 1 + step) % n + 1;
        images[static_cast<std::size_t>(point - 1)] = val;
        val = (val - 1 + sign + n) % n + 1;
      }
      const auto phi = Permutation::from_one_line(images);
      if (phi(y) != b) continue;
      bool preserves = true;
      for (const auto& s : S.elements) {
        const auto img = conjugate(s, phi);
        preserves &= std::find(S.elements.begin(), S.elements.end(), img) !=
                     S.elements.end();
      }
      if (preserves && std::find(out.begin(), out.end(), phi) == out.end())
        out.push_back(phi);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Oracle: scans all n! candidates.  Degree <= 8.
inline std::vector<Permutation> aut_G_S_bruteforce(int n, const GenSet& S) {
  if (n > 8) throw std::invalid_argument("bruteforce Aut(G,S) limited to n <= 8");
  if (S.degree != n) throw std::invalid_argument("degree mismatch");
  std::vector<Permutation> out;
  const std::uint64_t total = factorial(n);
  for (std::uint64_t r = 0; r < total; ++r) {
    const auto gperm = perm_unrank(r, n);
    bool preserves = true;
    for (const auto& s : S.elements) {
      const auto img = conjugate(s, gperm);
      preserves &= std::find(S.elements.begin(), S.elements.end(), img) !=
                   S.elements.end();
      if (!preserves) break;
    }
    if (preserves) out.push_back(gperm);
  }
  return out;  // rank order == lexicographic order
}

// ---------------------------------------------------------------------------
// Extends t -> t_img, c -> c_img to a group automorphism of S_n, if one
// exists: images are assigned along the right-multiplication closure BFS,
// any inconsistent reassignment rejects, and a full multiplication-table
// check confirms f(xy) = f(x) f(y).  Returns the element-image table over
// Lehmer ranks.  Degree <= 6 (table size <= 720).
inline std::optional<std::vector<std::uint32_t>> extend_generator_map(
    int n, const Permutation& t_img, const Permutation& c_img) {
  if (n < 3 || n > 6)
    throw std::invalid_argument("generator-map extension limited to 3 <= n <= 6");
  if (t_img.degree() != n || c_img.degree() != n)
    throw std::invalid_argument("degree mismatch");

  const auto t = Permutation::transposition(n, 1, 2);
  const auto c = Permutation::n_cycle(n);
  const std::uint64_t total = factorial(n);
  std::vector<std::uint32_t> table(static_cast<std::size_t>(total),
                                   detail::kUnset32);

  std::vector<Permutation> by_rank(static_cast<std::size_t>(total));
  for (std::uint64_t r = 0; r < total; ++r) by_rank[r] = perm_unrank(r, n);

  const std::array<Permutation, 2> gen{t, c};
  const std::array<Permutation, 2> gen_img{t_img, c_img};

  table[0] = 0;
  std::vector<std::uint32_t> queue{0};
  std::vector<Permutation> image_of(static_cast<std::size_t>(total));
  image_of[0] = Permutation::identity(n);
  for (std::size_t headq = 0; headq < queue.size(); ++headq) {
    const std::uint32_t gr = queue[headq];
    for (std::size_t j = 0; j < 2; ++j) {
      const auto h = by_rank[gr] * gen[j];
      const auto fh = image_of[gr] * gen_img[j];
      const auto hr = static_cast<std::uint32_t>(perm_rank(h));
      if (table[hr] == detail::kUnset32) {
        table[hr] = static_cast<std::uint32_t>(perm_rank(fh));
        image_of[hr] = fh;
        queue.push_back(hr);
      } else if (image_of[hr] != fh) {
        return std::nullopt;  // inconsistent along the closure
      }
    }
  }
  if (queue.size() != total) return std::nullopt;
  {
    std::vector<std::uint8_t> hit(static_cast<std::size_t>(total), 0);
    for (const std::uint32_t v : table) {
      if (v == detail::kUnset32) return std::nullopt;
      if (hit[v]) return std::nullopt;  // not bijective
      hit[v] = 1;
    }
  }

  for (std::uint64_t a = 0; a < total; ++a)
    for (std::uint64_t b = 0; b < total; ++b) {
      const auto lhs = image_of[static_cast<std::size_t>(
          perm_rank(by_rank[a] * by_rank[b]))];
      if (lhs != image_of[a] * image_of[b]) return std::nullopt;
    }
  return table;
}

// ---------------------------------------------------------------------------
// R(S_n) extended by the Aut(G,S) witnesses: the maps x -> (g^-1 x g) h.
// Explicitly listable through n = 8; symbolic element access otherwise.

struct NormalizerGroup {
  int n = 0;
  std::vector<Permutation> witnesses;
  std::vector<TwoSidedMap> elements;  // filled iff explicit_listing
  bool explicit_listing = false;

  std::uint64_t order() const {
    return static_cast<std::uint64_t>(witnesses.size()) * factorial(n);
  }

  TwoSidedMap element(std::size_t witness_idx, const Permutation& h) const {
    const auto& g = witnesses.at(witness_idx);
    return TwoSidedMap{g.inverse(), g * h};
  }
};

inline NormalizerGroup build_normalizer_group(int n, const GenSet& S) {
  NormalizerGroup grp;
  grp.n = n;
  grp.witnesses = aut_G_S_fast(n, S);
  if (n <= 8) {
    grp.explicit_listing = true;
    const std::uint64_t total = factorial(n);
    grp.elements.reserve(grp.witnesses.size() * total);
    for (std::size_t wi = 0; wi < grp.witnesses.size(); ++wi)
      for (std::uint64_t r = 0; r < total; ++r)
        grp.elements.push_back(grp.element(wi, perm_unrank(r, n)));
  }
  return grp;
}

// ---------------------------------------------------------------------------
// Normality verdict via the multiplicativity criterion: the graph is normal
// iff sigma(s t) = sigma(s) sigma(t) for every stabilizer element sigma and
// every ordered pair s, t from the connection set.

struct NormalityReport {
  bool normal = false;
  std::uint64_t stabilizer_size = 0;
  std::uint64_t aut_gs_size = 0;
  std::uint64_t multiplicativity_failures = 0;
  StabilizerResult stabilizer;
};

inline NormalityReport normality_check(const CayleyGraph& g,
                                       unsigned workers = 1) {
  NormalityReport rep;
  rep.stabilizer = stabilizer_search(g, workers);
  rep.stabilizer_size = rep.stabilizer.elements.size();
  const auto& S = g.genset();
  for (const auto& sigma : rep.stabilizer.elements) {
    for (const auto& s : S.elements) {
      for (const auto& t : S.elements) {
        const auto sigma_s = g.vertex(sigma.images[g.rank_of(s)]);
        const auto sigma_t = g.vertex(sigma.images[g.rank_of(t)]);
        const auto sigma_st = g.vertex(sigma.images[g.rank_of(s * t)]);
        if (sigma_st != sigma_s * sigma_t) ++rep.multiplicativity_failures;
      }
    }
  }
  rep.normal = rep.multiplicativity_failures == 0;
  try {
    rep.aut_gs_size = aut_G_S_fast(g.degree(), S).size();
  } catch (const std::invalid_argument&) {
    rep.aut_gs_size = 0;  // shape without a closed form
  }
  return rep;
}

// Orbit partition of the stabilizer acting on the connection set (the
// neighbors of e).  A non-transitive partition rules out arc-transitivity.
inline std::vector<std::vector<std::string>> arc_orbit_partition(
    const CayleyGraph& g, const StabilizerResult& stab) {
  const auto& S = g.genset();
  const std::size_t k = S.size();
  std::vector<std::uint64_t> gen_rank(k);
  for (std::size_t j = 0; j < k; ++j) gen_rank[j] = g.rank_of(S.elements[j]);

  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };

  for (const auto& sigma : stab.elements) {
    for (std::size_t j = 0; j < k; ++j) {
      const std::uint64_t img = sigma.images[gen_rank[j]];
      const auto it = std::find(gen_rank.begin(), gen_rank.end(), img);
      if (it == gen_rank.end())
        throw std::logic_error("stabilizer element does not fix N(e) setwise");
      const auto m = static_cast<std::size_t>(it - gen_rank.begin());
      parent[find(j)] = find(m);
    }
  }

  std::vector<std::vector<std::string>> orbits;
  std::vector<std::size_t> roots;
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t r = find(j);
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      roots.push_back(r);
      orbits.emplace_back();
      it = roots.end() - 1;
    }
    orbits[static_cast<std::size_t>(it - roots.begin())].push_back(S.labels[j]);
  }
  return orbits;
}

// ---------------------------------------------------------------------------
// Structure evidence for the full group: is left translation by phi an
// automorphism, does it commute with the right translations and with
// inn(phi), and what is the center of the generated vertex-map group?
// Evidence only; no isomorphism type is asserted.

struct StructureProbe {
  int n = 0;
  bool left_phi_edge_preserving = false;
  std::string left_phi_method;
  bool left_phi_commutes_right = false;
  bool left_phi_commutes_inner = false;
  std::string commute_method;
  std::optional<std::uint64_t> vertex_map_group_order;
  std::optional<std::uint64_t> center_order;
};

inline StructureProbe structure_probe(int n, unsigned workers = 1) {
  StructureProbe probe;
  probe.n = n;
  const auto phi = Permutation::phi_involution(n);
  const auto left_phi = TwoSidedMap::left_mul(phi);
  const auto S = GenSet::standard(n);

  if (n <= 8) {
    BuildOptions opts;
    opts.workers = workers;
    const auto g = CayleyGraph::build_explicit(S, opts);
    probe.left_phi_edge_preserving = preserves_adjacency(left_phi, g);
    probe.left_phi_method = "exhaustive";
  } else {
    probe.left_phi_edge_preserving = preserves_adjacency_on_ball(left_phi, S, 5);
    probe.left_phi_method = "ball-radius-5";
  }

  // commutation with right translations r_h and with inn(phi)
  const auto inn_phi = TwoSidedMap::inner(phi);
  if (n <= 6) {
    probe.commute_method = "exhaustive";
    bool right_ok = true;
    const std::uint64_t total = factorial(n);
    for (std::uint64_t hr = 0; hr < total && right_ok; ++hr) {
      const auto rh = TwoSidedMap::right_mul(perm_unrank(hr, n));
      right_ok = left_phi.then(rh) == rh.then(left_phi);
    }
    probe.left_phi_commutes_right = right_ok;
    probe.left_phi_commutes_inner =
        left_phi.then(inn_phi) == inn_phi.then(left_phi);
  } else {
    probe.commute_method = "sampled";
    const auto c = Permutation::n_cycle(n);
    const auto t = Permutation::transposition(n, 1, 2);
    bool right_ok = true;
    Permutation h = Permutation::identity(n);
    for (int i = 0; i < 512 && right_ok; ++i) {
      h = h * c * (i % 3 == 0 ? t : c) * power(c, i % 7);
      const auto rh = TwoSidedMap::right_mul(h);
      right_ok = left_phi.then(rh) == rh.then(left_phi);
    }
    probe.left_phi_commutes_right = right_ok;
    probe.left_phi_commutes_inner =
        left_phi.then(inn_phi) == inn_phi.then(left_phi);
  }

  // center of <r_c, r_t, inn(phi)> as explicit vertex maps
  if (n <= 6) {
    const auto g = CayleyGraph::build_explicit(S);
    std::vector<std::vector<std::uint32_t>> gens = {
        two_sided_table(g, TwoSidedMap::right_mul(Permutation::n_cycle(n))),
        two_sided_table(g, TwoSidedMap::right_mul(
                               Permutation::transposition(n, 1, 2))),
        two_sided_table(g, inn_phi)};

    struct VecHash {
      std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::uint32_t x : v) {
          h ^= x;
          h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
      }
    };
    auto compose_tables = [](const std::vector<std::uint32_t>& f,
                             const std::vector<std::uint32_t>& gt) {
      std::vector<std::uint32_t> h(f.size());
      for (std::size_t v = 0; v < f.size(); ++v) h[v] = gt[f[v]];
      return h;
    };

    std::vector<std::uint32_t> id(g.vertex_count());
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<std::uint32_t>> group{id};
    std::unordered_set<std::vector<std::uint32_t>, VecHash> seen{id};
    for (std::size_t headq = 0; headq < group.size(); ++headq) {
      for (const auto& gen : gens) {
        auto next = compose_tables(group[headq], gen);
        if (seen.insert(next).second) group.push_back(std::move(next));
      }
    }
    probe.vertex_map_group_order = group.size();

    std::uint64_t central = 0;
    for (const auto& z : group) {
      bool commutes = true;
      for (const auto& gen : gens)
        commutes &= compose_tables(z, gen) == compose_tables(gen, z);
      central += commutes;
    }
    probe.center_order = central;
  }

  return probe;
}

}  // namespace sncay
