#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sncay/cayley.hpp"
#include "sncay/genset.hpp"
#include "sncay/perm.hpp"

namespace sncay {

// A simple cycle of length L through the identity, stored as its vertex
// sequence (closed implicitly: the last vertex is adjacent to the first).
// Canonical form: starts at the identity, and of the two traversal
// directions keeps the one whose second vertex is smaller in one-line
// (equivalently Lehmer-rank) order.
struct CycleCert {
  std::vector<Permutation> vertices;
  bool canonical = false;

  int length() const { return static_cast<int>(vertices.size()); }

  bool operator==(const CycleCert& o) const { return vertices == o.vertices; }
  bool operator<(const CycleCert& o) const { return vertices < o.vertices; }
};

// Canonicalizes a closed path v_0..v_{L-1} that starts at the identity.
inline CycleCert canonical_cycle(std::vector<Permutation> path) {
  if (path.empty() || !path.front().is_identity())
    throw std::invalid_argument("cycle must start at the identity");
  const std::size_t L = path.size();
  if (path[L - 1] < path[1]) {
    // reverse direction, keeping the identity first
    std::reverse(path.begin() + 1, path.end());
  }
  CycleCert cert;
  cert.vertices = std::move(path);
  cert.canonical = true;
  return cert;
}

// Independent re-check of a certificate against the neighbor oracle:
// consecutive vertices adjacent (including the closing edge) and all
// vertices pairwise distinct.
inline bool verify_cycle(const CycleCert& cert, const GenSet& S) {
  const auto& vs = cert.vertices;
  if (vs.size() < 3) return false;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto& from = vs[i];
    const auto& to = vs[(i + 1) % vs.size()];
    const auto nb = neighbors(from, S);
    if (std::find(nb.begin(), nb.end(), to) == nb.end()) return false;
  }
  std::unordered_set<Permutation, Permutation::Hash> seen(vs.begin(), vs.end());
  return seen.size() == vs.size();
}

struct SearchStats {
  std::uint64_t nodes_expanded = 0;
  std::uint64_t full_length_paths = 0;
};

// All simple cycles of length exactly L through every anchor, found by
// depth-first search over paths rooted at the identity.  Only paths of
// length <= L are touched, so this runs at any degree.  Output is
// canonicalized, deduplicated and sorted.
inline std::vector<CycleCert> enumerate_cycles(
    const GenSet& S, int L, const std::vector<Permutation>& anchors,
    SearchStats* stats = nullptr) {
  if (L < 3) throw std::invalid_argument("cycle length must be >= 3");
  const auto e = Permutation::identity(S.degree);
  if (std::find(anchors.begin(), anchors.end(), e) == anchors.end())
    throw std::invalid_argument("anchor set must contain the identity");

  std::vector<CycleCert> found;
  std::vector<Permutation> path{e};
  std::unordered_set<Permutation, Permutation::Hash> on_path{e};
  SearchStats local;
  SearchStats& st = stats ? *stats : local;

  // the closing edge must return to e, i.e. the last vertex lies in S
  std::unordered_set<Permutation, Permutation::Hash> gen_set(
      S.elements.begin(), S.elements.end());

  auto dfs = [&](auto&& self) -> void {
    ++st.nodes_expanded;
    const int depth = static_cast<int>(path.size()) - 1;
    if (depth == L - 1) {
      ++st.full_length_paths;
      if (!gen_set.contains(path.back())) return;
      for (const auto& a : anchors)
        if (!on_path.contains(a)) return;
      found.push_back(canonical_cycle(path));
      return;
    }
    for (const auto& s : S.elements) {
      Permutation next = s * path.back();
      if (path.size() >= 2 && next == path[path.size() - 2]) continue;
      if (on_path.contains(next)) continue;
      on_path.insert(next);
      path.push_back(std::move(next));
      self(self);
      on_path.erase(path.back());
      path.pop_back();
    }
  };
  dfs(dfs);

  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

// ---------------------------------------------------------------------------
// Exponent-sequence engine.  A length-L cycle through the identity with the
// anchor arrangement of the three censuses is encoded by k alternating
// blocks c^{i_l} separated by single transpositions:
//
//   case A  (anchors e, c, c^-1):  walk c^{i_1} t c^{i_2} t ... t c^{i_k},
//       i_1 >= 1, i_k >= 1, i_l != 0, sum |i_l| + (k-1) = L
//   case B+ (anchors e, t, c):     walk t c^{i_1} t c^{i_2} ... t c^{i_k},
//       i_k <= -1, i_l != 0, sum |i_l| + k = L
//   case B- (anchors e, t, c^-1):  same shape with i_k >= 1.
//
// The walk multiplies generators on the left, so its endpoint is the written
// word c^{i_k} t ... t c^{i_1} (t-terminated for the B cases); a sequence
// solves the cycle equation iff the endpoint is the identity AND the induced
// closed walk is simple (a word solution alone only yields a closed walk).

enum class CaseTag { A, BPlus, BMinus };

inline std::string case_name(CaseTag tag) {
  switch (tag) {
    case CaseTag::A: return "A";
    case CaseTag::BPlus: return "B+";
    default: return "B-";
  }
}

struct ExponentSequence {
  CaseTag tag = CaseTag::A;
  int budget = 12;  // L
  std::vector<int> exponents;

  int block_count() const { return static_cast<int>(exponents.size()); }

  void validate() const {
    const int k = block_count();
    if (k < 1) throw std::invalid_argument("exponent sequence is empty");
    long sum_abs = 0;
    for (int x : exponents) {
      if (x == 0) throw std::invalid_argument("zero exponent block");
      sum_abs += x > 0 ? x : -x;
    }
    if (tag == CaseTag::A) {
      if (exponents.front() < 1 || exponents.back() < 1)
        throw std::invalid_argument("case A needs positive end blocks");
      if (sum_abs + (k - 1) != budget)
        throw std::invalid_argument("case A length mismatch");
    } else {
      if (tag == CaseTag::BPlus && exponents.back() > -1)
        throw std::invalid_argument("case B+ needs a negative final block");
      if (tag == CaseTag::BMinus && exponents.back() < 1)
        throw std::invalid_argument("case B- needs a positive final block");
      if (sum_abs + k != budget)
        throw std::invalid_argument("case B length mismatch");
    }
  }

  std::string str() const {
    std::string out = case_name(tag) + "(";
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(exponents[i]);
    }
    return out + ")";
  }
};

// The closed walk induced by an exponent sequence; returns L+1 vertices
// v_0 = e, ..., v_L (v_L is the word's full product).
inline std::vector<Permutation> exponent_walk(int n, const ExponentSequence& seq) {
  seq.validate();
  const auto c = Permutation::n_cycle(n);
  const auto ci = c.inverse();
  const auto t = Permutation::transposition(n, 1, 2);
  std::vector<Permutation> path;
  path.reserve(static_cast<std::size_t>(seq.budget) + 1);
  path.push_back(Permutation::identity(n));
  auto step = [&](const Permutation& s) { path.push_back(s * path.back()); };
  const bool t_leads = seq.tag != CaseTag::A;
  for (std::size_t l = 0; l < seq.exponents.size(); ++l) {
    if (t_leads || l > 0) step(t);
    const int i = seq.exponents[l];
    const Permutation& block = i > 0 ? c : ci;
    for (int m = 0; m < (i > 0 ? i : -i); ++m) step(block);
  }
  return path;
}

// Enumerates every sequence satisfying the sign and length constraints of
// the case, in deterministic order (k ascending, then lexicographic with
// positive sign first).  No divisibility filter: at small n solutions with
// nonzero net rotation exist, and the evaluation decides.
inline std::vector<ExponentSequence> admissible_sequences(int L, CaseTag tag) {
  std::vector<ExponentSequence> out;
  const int separators_for_k1 = tag == CaseTag::A ? 0 : 1;
  for (int k = 1; 2 * k - 1 + separators_for_k1 <= L; ++k) {
    const int total = tag == CaseTag::A ? L - (k - 1) : L - k;
    if (total < k) break;
    std::vector<int> current(static_cast<std::size_t>(k));
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
      if (pos == k) {
        if (remaining != 0) return;
        ExponentSequence seq{tag, L, current};
        seq.validate();
        out.push_back(std::move(seq));
        return;
      }
      const int slots_after = k - pos - 1;
      for (int mag = 1; mag <= remaining - slots_after; ++mag) {
        bool plus_ok, minus_ok;
        if (tag == CaseTag::A) {
          plus_ok = true;
          minus_ok = pos != 0 && pos != k - 1;
        } else if (tag == CaseTag::BPlus) {
          plus_ok = pos != k - 1;
          minus_ok = true;
        } else {
          plus_ok = true;
          minus_ok = pos != k - 1;
        }
        if (plus_ok) {
          current[static_cast<std::size_t>(pos)] = mag;
          self(self, pos + 1, remaining - mag);
        }
        if (minus_ok) {
          current[static_cast<std::size_t>(pos)] = -mag;
          self(self, pos + 1, remaining - mag);
        }
      }
    };
    rec(rec, 0, total);
  }
  return out;
}

// Solves the anchored-cycle equation: keeps the admissible sequences whose
// walk closes at the identity and is simple, paired with canonical
// certificates.  Sorted by certificate.
inline std::vector<std::pair<ExponentSequence, CycleCert>>
solve_exponent_equation(int n, int L, CaseTag tag) {
  if (n < 3) throw std::invalid_argument("degree must be >= 3");
  std::vector<std::pair<ExponentSequence, CycleCert>> out;
  for (const auto& seq : admissible_sequences(L, tag)) {
    auto walk = exponent_walk(n, seq);
    if (!walk.back().is_identity()) continue;
    walk.pop_back();
    std::unordered_set<Permutation, Permutation::Hash> distinct(walk.begin(),
                                                                walk.end());
    if (distinct.size() != walk.size()) continue;
    out.emplace_back(seq, canonical_cycle(std::move(walk)));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

// ---------------------------------------------------------------------------
// Case-analysis report: candidate sequences grouped the way the analysis
// tables group them (case A by the unordered end-block pair and the middle
// multiset; case B by the final block alone), each candidate marked
// solution / refuted-by-evaluation / refuted-by-repeated-vertex.
//
// Grouping keeps only candidates whose net rotation vanishes mod n — the
// support argument behind the tables.  For n >= 13 that filter is exact;
// below n = 13 the census engines, not this report, are authoritative.

struct CandidateOutcome {
  ExponentSequence sequence;
  Permutation evaluation;       // full word product
  bool word_is_identity = false;
  bool walk_simple = false;

  bool solution() const { return word_is_identity && walk_simple; }
};

struct PatternGroup {
  int k = 0;
  std::vector<int> end_blocks;   // case A: {i_1, i_k} sorted descending; case B: {i_k}
  std::vector<int> middle;       // case A: middle multiset ascending; case B: empty
  std::vector<CandidateOutcome> candidates;
  bool has_solution = false;
};

inline std::vector<PatternGroup> classify_solution_types(int n, int L,
                                                         CaseTag tag) {
  if (n < 3) throw std::invalid_argument("degree must be >= 3");
  struct Key {
    int k;
    std::vector<int> ends;
    std::vector<int> middle;
    bool operator<(const Key& o) const {
      return std::tie(k, ends, middle) < std::tie(o.k, o.ends, o.middle);
    }
    bool operator==(const Key& o) const {
      return k == o.k && ends == o.ends && middle == o.middle;
    }
  };
  std::vector<std::pair<Key, CandidateOutcome>> entries;
  for (const auto& seq : admissible_sequences(L, tag)) {
    long net = 0;
    for (int x : seq.exponents) net += x;
    if (net % n != 0) continue;

    CandidateOutcome cand;
    cand.sequence = seq;
    auto walk = exponent_walk(n, seq);
    cand.evaluation = walk.back();
    cand.word_is_identity = cand.evaluation.is_identity();
    if (cand.word_is_identity) {
      walk.pop_back();
      std::unordered_set<Permutation, Permutation::Hash> distinct(walk.begin(),
                                                                  walk.end());
      cand.walk_simple = distinct.size() == walk.size();
    }

    Key key;
    key.k = seq.block_count();
    if (tag == CaseTag::A) {
      key.ends = {seq.exponents.front(), seq.exponents.back()};
      std::sort(key.ends.begin(), key.ends.end(), std::greater<int>{});
      if (seq.block_count() >= 2)
        key.middle.assign(seq.exponents.begin() + 1, seq.exponents.end() - 1);
      std::sort(key.middle.begin(), key.middle.end());
    } else {
      key.ends = {seq.exponents.back()};
    }
    entries.emplace_back(std::move(key), std::move(cand));
  }

  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<PatternGroup> groups;
  for (auto& [key, cand] : entries) {
    if (groups.empty() || !(groups.back().k == key.k &&
                            groups.back().end_blocks == key.ends &&
                            groups.back().middle == key.middle)) {
      PatternGroup g;
      g.k = key.k;
      g.end_blocks = key.ends;
      g.middle = key.middle;
      groups.push_back(std::move(g));
    }
    groups.back().has_solution |= cand.solution();
    groups.back().candidates.push_back(std::move(cand));
  }
  return groups;
}

// ---------------------------------------------------------------------------
// Census over the three anchor families of a {g, g^-1, tau}-shaped set.

struct CensusTable {
  std::uint64_t through_pair = 0;    // anchors {e, g, g^-1}
  std::uint64_t through_tau_g = 0;   // anchors {e, tau, g}
  std::uint64_t through_tau_ginv = 0;  // anchors {e, tau, g^-1}

  bool operator==(const CensusTable&) const = default;
};

inline CensusTable census(const GenSet& S, int L, SearchStats* stats = nullptr) {
  const auto shape = S.cycle_pair_and_involution();
  if (!shape)
    throw std::invalid_argument(
        "census needs a {g, g^-1, involution} connection set");
  const auto e = Permutation::identity(S.degree);
  const auto& g = S.elements[(*shape)[0]];
  const auto& ginv = S.elements[(*shape)[1]];
  const auto& tau = S.elements[(*shape)[2]];

  CensusTable table;
  table.through_pair = enumerate_cycles(S, L, {e, g, ginv}, stats).size();
  table.through_tau_g = enumerate_cycles(S, L, {e, tau, g}, stats).size();
  table.through_tau_ginv = enumerate_cycles(S, L, {e, tau, ginv}, stats).size();
  return table;
}

}  // namespace sncay
