#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace sncay {

enum class Parity : std::uint8_t { even = 0, odd = 1 };

inline Parity operator^(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<std::uint8_t>(a) ^
                             static_cast<std::uint8_t>(b));
}

// A permutation of the points {1,...,n}, stored as a 0-based image table.
//
// Product convention: the written product p*q applies p FIRST, then q,
// i.e. (p*q)(x) = q(p(x)).  Under this convention conjugate(p, g) = g^-1*p*g
// relabels the cycles of p by the images of g.  The convention is pinned by
// tests against three fixed conjugates of (1 2) by powers of the n-cycle.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int n) {
    require(n >= 0, "degree must be nonnegative");
    Permutation p;
    p.images_.resize(static_cast<std::size_t>(n));
    std::iota(p.images_.begin(), p.images_.end(), 0);
    return p;
  }

  // images_1based[x-1] is the image of x; must be a bijection of {1,...,n}.
  static Permutation from_one_line(const std::vector<int>& images_1based) {
    const int n = static_cast<int>(images_1based.size());
    Permutation p;
    p.images_.resize(static_cast<std::size_t>(n));
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int x = 0; x < n; ++x) {
      const int y = images_1based[static_cast<std::size_t>(x)];
      require(y >= 1 && y <= n, "image out of range");
      require(!seen[static_cast<std::size_t>(y - 1)], "image repeated");
      seen[static_cast<std::size_t>(y - 1)] = true;
      p.images_[static_cast<std::size_t>(x)] = y - 1;
    }
    return p;
  }

  // The cycle (1 2 ... n): x -> x+1, n -> 1.
  static Permutation n_cycle(int n) {
    require(n >= 3, "n_cycle requires n >= 3");
    Permutation p = identity(n);
    for (int x = 0; x < n; ++x) p.images_[static_cast<std::size_t>(x)] = (x + 1) % n;
    return p;
  }

  static Permutation transposition(int n, int i, int j) {
    require(n >= 2, "transposition requires n >= 2");
    require(i >= 1 && i <= n && j >= 1 && j <= n, "point out of range");
    require(i != j, "transposition needs two distinct points");
    Permutation p = identity(n);
    std::swap(p.images_[static_cast<std::size_t>(i - 1)],
              p.images_[static_cast<std::size_t>(j - 1)]);
    return p;
  }

  // (1 2)(3 n)(4 n-1)(5 n-2)...: swaps 1,2 and maps k -> n+3-k for k >= 3.
  // The midpoint (n+3)/2 is fixed when n is odd; at n = 3 this is just (1 2).
  static Permutation phi_involution(int n) {
    require(n >= 3, "phi_involution requires n >= 3");
    Permutation p = identity(n);
    p.images_[0] = 1;
    p.images_[1] = 0;
    for (int k = 3; k <= n; ++k)
      p.images_[static_cast<std::size_t>(k - 1)] = n + 3 - k - 1;
    return p;
  }

  int degree() const { return static_cast<int>(images_.size()); }

  // Image of the 1-based point x.
  int operator()(int x) const {
    require(x >= 1 && x <= degree(), "point out of range");
    return images_[static_cast<std::size_t>(x - 1)] + 1;
  }

  // 0-based image table, for the ranked engines.
  const std::vector<int>& raw() const { return images_; }

  bool is_identity() const {
    for (int x = 0; x < degree(); ++x)
      if (images_[static_cast<std::size_t>(x)] != x) return false;
    return true;
  }

  friend Permutation operator*(const Permutation& p, const Permutation& q) {
    require(p.degree() == q.degree(), "degree mismatch in product");
    Permutation r;
    r.images_.resize(p.images_.size());
    for (std::size_t x = 0; x < p.images_.size(); ++x)
      r.images_[x] = q.images_[static_cast<std::size_t>(p.images_[x])];
    return r;
  }

  Permutation inverse() const {
    Permutation r;
    r.images_.resize(images_.size());
    for (std::size_t x = 0; x < images_.size(); ++x)
      r.images_[static_cast<std::size_t>(images_[x])] = static_cast<int>(x);
    return r;
  }

  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

  // Disjoint cycles, fixed points omitted.  Each cycle is rotated so its
  // minimum point leads; cycles sorted by leading point.
  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(images_.size(), false);
    for (int start = 0; start < degree(); ++start) {
      if (seen[static_cast<std::size_t>(start)]) continue;
      if (images_[static_cast<std::size_t>(start)] == start) continue;
      std::vector<int> cyc;
      for (int x = start; !seen[static_cast<std::size_t>(x)];
           x = images_[static_cast<std::size_t>(x)]) {
        seen[static_cast<std::size_t>(x)] = true;
        cyc.push_back(x + 1);
      }
      out.push_back(std::move(cyc));
    }
    return out;  // min point leads automatically: start is the orbit minimum
  }

  std::vector<int> support() const {
    std::vector<int> s;
    for (int x = 0; x < degree(); ++x)
      if (images_[static_cast<std::size_t>(x)] != x) s.push_back(x + 1);
    return s;
  }

  std::uint64_t order() const {
    std::uint64_t ord = 1;
    for (const auto& cyc : cycles()) ord = lcm_checked(ord, cyc.size());
    return ord;
  }

  Parity parity() const {
    int transpositions = 0;
    for (const auto& cyc : cycles())
      transpositions += static_cast<int>(cyc.size()) - 1;
    return transpositions % 2 == 0 ? Parity::even : Parity::odd;
  }

  bool is_even() const { return parity() == Parity::even; }

  std::string cycle_string() const {
    const auto cycs = cycles();
    if (cycs.empty()) return "()";
    std::string out;
    for (const auto& cyc : cycs) {
      out += '(';
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(cyc[i]);
      }
      out += ')';
    }
    return out;
  }

  std::string one_line_string() const {
    std::string out = "[";
    for (int x = 0; x < degree(); ++x) {
      if (x) out += ',';
      out += std::to_string(images_[static_cast<std::size_t>(x)] + 1);
    }
    out += ']';
    return out;
  }

  // Accepts cycle notation "(1 2)(3 13)", one-line "[2,1,...]", or "e"/"()"
  // for the identity.
  static Permutation parse(const std::string& text, int n);

  struct Hash {
    std::size_t operator()(const Permutation& p) const {
      std::uint64_t h = 1469598103934665603ull;
      for (int v : p.images_) {
        h ^= static_cast<std::uint64_t>(v) + 1;
        h *= 1099511628211ull;
      }
      return static_cast<std::size_t>(h);
    }
  };

 private:
  static void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
  }

  static std::uint64_t lcm_checked(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t g = std::gcd(a, b);
    std::uint64_t r = 0;
    if (__builtin_mul_overflow(a / g, b, &r))
      throw std::overflow_error("permutation order overflows 64 bits");
    return r;
  }

  std::vector<int> images_;
};

inline Permutation compose(const Permutation& p, const Permutation& q) {
  return p * q;
}

inline Permutation power(const Permutation& p, long long k) {
  Permutation base = k < 0 ? p.inverse() : p;
  std::uint64_t e = k < 0 ? -static_cast<std::uint64_t>(k) : static_cast<std::uint64_t>(k);
  Permutation acc = Permutation::identity(p.degree());
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

// g^-1 * p * g: relabels the cycles of p by g.
inline Permutation conjugate(const Permutation& p, const Permutation& g) {
  if (p.degree() != g.degree())
    throw std::invalid_argument("degree mismatch in conjugate");
  return g.inverse() * p * g;
}

inline Permutation Permutation::parse(const std::string& text, int n) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_int = [&]() -> int {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw std::invalid_argument("expected a point in permutation text");
    return std::stoi(text.substr(start, pos - start));
  };

  skip_ws();
  if (pos == text.size()) throw std::invalid_argument("empty permutation text");

  if (text[pos] == 'e') {
    ++pos;
    skip_ws();
    if (pos != text.size()) throw std::invalid_argument("trailing text after 'e'");
    return identity(n);
  }

  if (text[pos] == '[') {
    ++pos;
    std::vector<int> images;
    skip_ws();
    if (pos < text.size() && text[pos] == ']') {
      ++pos;
    } else {
      while (true) {
        images.push_back(read_int());
        skip_ws();
        if (pos < text.size() && text[pos] == ',') { ++pos; continue; }
        if (pos < text.size() && text[pos] == ']') { ++pos; break; }
        throw std::invalid_argument("expected ',' or ']' in one-line notation");
      }
    }
    if (static_cast<int>(images.size()) != n)
      throw std::invalid_argument("one-line notation has wrong length");
    return from_one_line(images);
  }

  if (text[pos] == '(') {
    Permutation p = identity(n);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    while (true) {
      skip_ws();
      if (pos == text.size()) break;
      if (text[pos] != '(') throw std::invalid_argument("expected '(' in cycle notation");
      ++pos;
      std::vector<int> cyc;
      skip_ws();
      while (pos < text.size() && text[pos] != ')') {
        cyc.push_back(read_int());
        skip_ws();
      }
      if (pos == text.size()) throw std::invalid_argument("unterminated cycle");
      ++pos;  // ')'
      for (int x : cyc) {
        if (x < 1 || x > n) throw std::invalid_argument("cycle point out of range");
        if (used[static_cast<std::size_t>(x - 1)])
          throw std::invalid_argument("point repeated across cycles");
        used[static_cast<std::size_t>(x - 1)] = true;
      }
      for (std::size_t i = 0; i < cyc.size(); ++i)
        p.images_[static_cast<std::size_t>(cyc[i] - 1)] = cyc[(i + 1) % cyc.size()] - 1;
    }
    return p;
  }

  throw std::invalid_argument("unrecognized permutation notation");
}

}  // namespace sncay
