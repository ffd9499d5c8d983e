#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sncay/perm.hpp"

namespace sncay {

// An inverse-closed, identity-free connection set, kept in a fixed order.
// For the standard and variant sets the order is {c, c^-1, t} with labels
// "c", "c-", "t"; that order is part of the neighbor-listing contract.
struct GenSet {
  int degree = 0;
  std::vector<Permutation> elements;
  std::vector<std::string> labels;

  static GenSet standard(int n) {
    if (n < 3) throw std::invalid_argument("standard set requires n >= 3");
    return make(n,
                {Permutation::n_cycle(n), Permutation::n_cycle(n).inverse(),
                 Permutation::transposition(n, 1, 2)},
                {"c", "c-", "t"});
  }

  // {c, c^-1, (i i+1)}; variant(n, 1) coincides with standard(n).
  static GenSet variant(int n, int i) {
    if (n < 3) throw std::invalid_argument("variant set requires n >= 3");
    if (i < 1 || i > n - 1)
      throw std::invalid_argument("variant transposition needs 1 <= i <= n-1");
    return make(n,
                {Permutation::n_cycle(n), Permutation::n_cycle(n).inverse(),
                 Permutation::transposition(n, i, i + 1)},
                {"c", "c-", "t"});
  }

  static GenSet custom(int n, std::vector<Permutation> gens) {
    std::vector<std::string> names;
    names.reserve(gens.size());
    for (const auto& g : gens) names.push_back(g.cycle_string());
    return make(n, std::move(gens), std::move(names));
  }

  static GenSet make(int n, std::vector<Permutation> gens,
                     std::vector<std::string> names) {
    if (gens.empty()) throw std::invalid_argument("connection set is empty");
    if (gens.size() != names.size())
      throw std::invalid_argument("labels do not match elements");
    for (const auto& g : gens) {
      if (g.degree() != n)
        throw std::invalid_argument("connection set degree mismatch");
      if (g.is_identity())
        throw std::invalid_argument("connection set contains the identity");
    }
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j)
        if (gens[i] == gens[j])
          throw std::invalid_argument("connection set contains a duplicate");
    for (const auto& g : gens) {
      const auto inv = g.inverse();
      if (std::find(gens.begin(), gens.end(), inv) == gens.end())
        throw std::invalid_argument("connection set is not inverse-closed");
    }
    GenSet s;
    s.degree = n;
    s.elements = std::move(gens);
    s.labels = std::move(names);
    return s;
  }

  std::size_t size() const { return elements.size(); }

  // Shape {g, g^-1, tau} with tau the unique involution.  Returns indices
  // (g, g^-1, tau); the lex-smaller member of the pair plays g, which picks
  // c itself for the standard and variant sets.
  std::optional<std::array<std::size_t, 3>> cycle_pair_and_involution() const {
    if (elements.size() != 3) return std::nullopt;
    std::optional<std::size_t> tau;
    for (std::size_t i = 0; i < 3; ++i) {
      if (elements[i].order() == 2) {
        if (tau) return std::nullopt;
        tau = i;
      }
    }
    if (!tau) return std::nullopt;
    std::array<std::size_t, 2> pair{};
    std::size_t k = 0;
    for (std::size_t i = 0; i < 3; ++i)
      if (i != *tau) pair[k++] = i;
    if (elements[pair[0]].inverse() != elements[pair[1]]) return std::nullopt;
    if (elements[pair[1]] < elements[pair[0]]) std::swap(pair[0], pair[1]);
    return std::array<std::size_t, 3>{pair[0], pair[1], *tau};
  }
};

// ---------------------------------------------------------------------------
// Words over the alphabet {c, c^-1, t}.  A word is symbolic so the same word
// can be evaluated at any degree; the leftmost letter of the written word
// applies first, matching the product convention.

enum class Letter : std::uint8_t { c, cinv, t };

struct Word {
  std::vector<Letter> letters;

  std::size_t length() const { return letters.size(); }

  // Token syntax: whitespace-separated `c`, `c-`, `t`, with `c^k` / `c^-k`
  // expanding to |k| copies of c or c-.
  static Word parse(const std::string& text) {
    Word w;
    std::size_t pos = 0;
    while (pos < text.size()) {
      while (pos < text.size() &&
             std::isspace(static_cast<unsigned char>(text[pos])))
        ++pos;
      if (pos >= text.size()) break;
      std::size_t end = pos;
      while (end < text.size() &&
             !std::isspace(static_cast<unsigned char>(text[end])))
        ++end;
      const std::string tok = text.substr(pos, end - pos);
      pos = end;
      if (tok == "c") {
        w.letters.push_back(Letter::c);
      } else if (tok == "c-") {
        w.letters.push_back(Letter::cinv);
      } else if (tok == "t") {
        w.letters.push_back(Letter::t);
      } else if (tok.size() > 2 && tok[0] == 'c' && tok[1] == '^') {
        const long k = std::stol(tok.substr(2));
        if (k == 0) throw std::invalid_argument("zero exponent in word");
        const Letter l = k > 0 ? Letter::c : Letter::cinv;
        for (long i = 0; i < (k > 0 ? k : -k); ++i) w.letters.push_back(l);
      } else {
        throw std::invalid_argument("bad word token: " + tok);
      }
    }
    return w;
  }

  std::string str() const {
    std::string out;
    std::size_t i = 0;
    while (i < letters.size()) {
      if (!out.empty()) out += ' ';
      if (letters[i] == Letter::t) {
        out += 't';
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < letters.size() && letters[j] == letters[i]) ++j;
      const long run = static_cast<long>(j - i);
      const long k = letters[i] == Letter::c ? run : -run;
      if (run == 1)
        out += (k > 0 ? "c" : "c-");
      else
        out += "c^" + std::to_string(k);
      i = j;
    }
    return out;
  }
};

inline Permutation letter_perm(Letter l, int n) {
  switch (l) {
    case Letter::c: return Permutation::n_cycle(n);
    case Letter::cinv: return Permutation::n_cycle(n).inverse();
    default: return Permutation::transposition(n, 1, 2);
  }
}

inline Permutation evaluate_word(const Word& w, int n) {
  if (n < 3) throw std::invalid_argument("word evaluation requires n >= 3");
  const std::array<Permutation, 3> alphabet{
      Permutation::n_cycle(n), Permutation::n_cycle(n).inverse(),
      Permutation::transposition(n, 1, 2)};
  Permutation acc = Permutation::identity(n);
  for (Letter l : w.letters)
    acc = acc * alphabet[static_cast<std::size_t>(l)];
  return acc;
}

// ---------------------------------------------------------------------------
// The five identities behind the anchored 12-cycles.  Each is a fixed word
// equal to the identity; ids carry the exponent signature (A words run
// c-block first, B words transposition first).  The floor is the smallest
// degree at which the identity holds: the A and four-block B words square a
// product supported on {1,2,3,4}, so they need n >= 4.

struct Relation {
  std::string id;
  Word word;
  int min_degree;
};

inline const std::vector<Relation>& cycle_relations() {
  static const std::vector<Relation> rels = {
      {"A(1,-2,2,-2,1)", Word::parse("c t c^-2 t c^2 t c^-2 t c"), 4},
      {"B+(2,-2,2,-2)", Word::parse("c^-2 t c^2 t c^-2 t c^2 t"), 4},
      {"B+(1,-1,1,-1,1,-1)", Word::parse("c- t c t c- t c t c- t c t"), 3},
      {"B-(-2,2,-2,2)", Word::parse("c^2 t c^-2 t c^2 t c^-2 t"), 4},
      {"B-(-1,1,-1,1,-1,1)", Word::parse("c t c- t c t c- t c t c- t"), 3},
  };
  return rels;
}

struct RelationResult {
  std::string id;
  bool applicable = false;
  bool holds = false;
};

inline std::vector<RelationResult> check_relations(int n) {
  if (n < 3) throw std::invalid_argument("check_relations requires n >= 3");
  std::vector<RelationResult> out;
  for (const auto& rel : cycle_relations()) {
    RelationResult r;
    r.id = rel.id;
    r.applicable = n >= rel.min_degree;
    r.holds = r.applicable && evaluate_word(rel.word, n).is_identity();
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Breadth-first closure under right multiplication, seeded at the identity.
// Discovery order (queue order, generators in list order) is part of the
// contract.  On cap overflow the element list is dropped rather than
// returned partially.

struct ClosureResult {
  std::vector<Permutation> elements;
  bool overflowed = false;
};

inline ClosureResult closure(const std::vector<Permutation>& gens,
                             std::size_t cap = 40'000'000) {
  if (gens.empty()) throw std::invalid_argument("closure needs generators");
  const int n = gens.front().degree();
  for (const auto& g : gens)
    if (g.degree() != n) throw std::invalid_argument("closure degree mismatch");

  ClosureResult result;
  std::unordered_set<Permutation, Permutation::Hash> seen;
  result.elements.push_back(Permutation::identity(n));
  seen.insert(result.elements.front());
  for (std::size_t head = 0; head < result.elements.size(); ++head) {
    const Permutation current = result.elements[head];
    for (const auto& g : gens) {
      Permutation next = current * g;
      if (seen.insert(next).second) {
        if (result.elements.size() >= cap) {
          result.elements.clear();
          result.overflowed = true;
          return result;
        }
        result.elements.push_back(std::move(next));
      }
    }
  }
  return result;
}

}  // namespace sncay
