#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "sncay/genset.hpp"
#include "sncay/parallel.hpp"
#include "sncay/perm.hpp"

namespace sncay {

inline std::uint64_t factorial(int n) {
  if (n < 0 || n > 20)
    throw std::invalid_argument("factorial only tabulated for 0 <= n <= 20");
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

using VertexRank = std::uint64_t;

namespace detail {

// Lehmer code (factorial number system) on raw image tables.  Rank order
// coincides with lexicographic order of one-line notation, so rank
// comparisons and image-table comparisons agree.
inline VertexRank rank_images(const int* img, int n) {
  std::uint64_t r = 0;
  for (int i = 0; i < n; ++i) {
    int smaller_later = 0;
    for (int j = i + 1; j < n; ++j)
      if (img[j] < img[i]) ++smaller_later;
    r = r * static_cast<std::uint64_t>(n - i) +
        static_cast<std::uint64_t>(smaller_later);
  }
  return r;
}

inline void unrank_images(VertexRank r, int n, int* out) {
  std::array<std::uint64_t, 21> base{};
  base[0] = 1;
  for (int i = 1; i <= n; ++i) base[static_cast<std::size_t>(i)] = base[i - 1] * i;
  std::array<int, 20> avail{};
  for (int i = 0; i < n; ++i) avail[static_cast<std::size_t>(i)] = i;
  int left = n;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t f = base[static_cast<std::size_t>(n - 1 - i)];
    const int d = static_cast<int>(r / f);
    r %= f;
    out[i] = avail[static_cast<std::size_t>(d)];
    for (int k = d; k < left - 1; ++k)
      avail[static_cast<std::size_t>(k)] = avail[static_cast<std::size_t>(k + 1)];
    --left;
  }
}

}  // namespace detail

inline VertexRank perm_rank(const Permutation& p) {
  const int n = p.degree();
  if (n > 20) throw std::invalid_argument("rank requires degree <= 20");
  return detail::rank_images(p.raw().data(), n);
}

inline Permutation perm_unrank(VertexRank r, int n) {
  if (n < 0 || n > 20) throw std::invalid_argument("unrank requires degree <= 20");
  if (r >= factorial(n)) throw std::invalid_argument("rank out of range");
  std::array<int, 20> buf{};
  detail::unrank_images(r, n, buf.data());
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = buf[static_cast<std::size_t>(i)] + 1;
  return Permutation::from_one_line(images);
}

// Neighbors of g: h with h g^-1 in S, i.e. h = s*g, in generator order.
inline std::vector<Permutation> neighbors(const Permutation& g, const GenSet& S) {
  if (g.degree() != S.degree)
    throw std::invalid_argument("neighbors: degree mismatch");
  std::vector<Permutation> out;
  out.reserve(S.size());
  for (const auto& s : S.elements) out.push_back(s * g);
  return out;
}

struct BudgetError : std::runtime_error {
  std::uint64_t required_bytes;
  BudgetError(const std::string& msg, std::uint64_t bytes)
      : std::runtime_error(msg), required_bytes(bytes) {}
};

enum class GraphMode { explicit_adjacency, implicit_oracle };

struct BuildOptions {
  std::uint64_t memory_budget = 8ull << 30;
  bool allow_big = false;  // permit explicit builds beyond 10! vertices
  unsigned workers = 1;
};

// The Cayley graph Cay(G, S) over the subgroup generated by S.  Explicit
// mode materializes a flat adjacency table of 32-bit ranks (enough through
// 12! vertices); implicit mode keeps only the neighbor oracle and supports
// the anchored-search and ball operations.
class CayleyGraph {
 public:
  static constexpr std::uint64_t default_explicit_vertex_ceiling = 3'628'800;  // 10!

  static CayleyGraph build(const GenSet& S, const BuildOptions& opts = {}) {
    const auto plan = explicit_plan(S, opts);
    if (plan.feasible &&
        (plan.vertices <= default_explicit_vertex_ceiling || opts.allow_big))
      return build_explicit(S, opts);
    return implicit(S);
  }

  static CayleyGraph implicit(const GenSet& S) {
    CayleyGraph g;
    g.genset_ = S;
    g.mode_ = GraphMode::implicit_oracle;
    if (standard_like(S) && S.degree <= 20)
      g.vcount_ = factorial(S.degree);
    return g;
  }

  static CayleyGraph build_explicit(const GenSet& S, const BuildOptions& opts = {}) {
    CayleyGraph g;
    g.genset_ = S;
    g.mode_ = GraphMode::explicit_adjacency;

    if (standard_like(S)) {
      if (S.degree > 12)
        throw BudgetError(
            "explicit Cayley graph on S_" + std::to_string(S.degree) +
                " needs " + std::to_string(explicit_bytes_upper(S)) +
                " bytes of adjacency, beyond the 32-bit rank table",
            explicit_bytes_upper(S));
      g.vcount_ = factorial(S.degree);
      g.lehmer_ = true;
    } else {
      auto closed = closure(S.elements, closure_cap(opts.memory_budget, S.degree));
      if (closed.overflowed)
        throw BudgetError("connection-set closure exceeds the memory budget",
                          opts.memory_budget + 1);
      if (S.degree <= 20 && closed.elements.size() == factorial(S.degree)) {
        g.vcount_ = factorial(S.degree);
        g.lehmer_ = true;
      } else {
        g.vcount_ = closed.elements.size();
        g.lehmer_ = false;
        g.vertices_ = std::move(closed.elements);
        g.index_.reserve(g.vertices_.size());
        for (std::uint32_t i = 0; i < g.vertices_.size(); ++i)
          g.index_.emplace(g.vertices_[static_cast<std::size_t>(i)], i);
      }
    }

    const std::uint64_t vcount = *g.vcount_;
    const std::uint64_t bytes = vcount * S.size() * sizeof(std::uint32_t);
    if (bytes > opts.memory_budget)
      throw BudgetError("explicit Cayley graph needs " + std::to_string(bytes) +
                            " bytes, budget is " +
                            std::to_string(opts.memory_budget),
                        bytes);
    if (vcount > 0xFFFFFFFFull)
      throw BudgetError("vertex count exceeds 32-bit rank table", bytes);

    g.adjacency_.resize(static_cast<std::size_t>(vcount * S.size()));
    g.fill_adjacency(opts.workers);
    g.connected_ = g.bfs_connected();
    return g;
  }

  int degree() const { return genset_.degree; }
  const GenSet& genset() const { return genset_; }
  GraphMode mode() const { return mode_; }
  bool is_explicit() const { return mode_ == GraphMode::explicit_adjacency; }
  std::size_t valency() const { return genset_.size(); }

  std::optional<std::uint64_t> vertex_count_if_known() const { return vcount_; }

  std::uint64_t vertex_count() const {
    if (!vcount_)
      throw std::logic_error("vertex count unknown for this implicit graph");
    return *vcount_;
  }

  std::uint64_t edge_count() const {
    require_explicit();
    return vertex_count() * valency() / 2;
  }

  bool connected() const {
    require_explicit();
    return *connected_;
  }

  Permutation vertex(VertexRank r) const {
    if (lehmer_ || mode_ == GraphMode::implicit_oracle)
      return perm_unrank(r, degree());
    if (r >= vertices_.size()) throw std::invalid_argument("rank out of range");
    return vertices_[static_cast<std::size_t>(r)];
  }

  VertexRank rank_of(const Permutation& p) const {
    if (lehmer_ || mode_ == GraphMode::implicit_oracle) return perm_rank(p);
    const auto it = index_.find(p);
    if (it == index_.end())
      throw std::invalid_argument("permutation is not a vertex of this graph");
    return it->second;
  }

  // Explicit adjacency row: valency() entries in generator order.
  const std::uint32_t* row(VertexRank v) const {
    require_explicit();
    return adjacency_.data() + static_cast<std::size_t>(v) * valency();
  }

  // Byte-deterministic edge list: "a b" with a < b, ascending.
  void dump_edges(std::ostream& os) const {
    require_explicit();
    const std::uint64_t vcount = vertex_count();
    std::vector<std::uint32_t> nbr(valency());
    for (std::uint64_t v = 0; v < vcount; ++v) {
      const std::uint32_t* r = row(v);
      nbr.assign(r, r + valency());
      std::sort(nbr.begin(), nbr.end());
      for (std::uint32_t w : nbr)
        if (w > v) os << v << ' ' << w << '\n';
    }
  }

 private:
  static bool standard_like(const GenSet& S) {
    return S.labels == std::vector<std::string>{"c", "c-", "t"};
  }

  static std::uint64_t explicit_bytes_upper(const GenSet& S) {
    // 13!+ ranks need 8-byte entries; used only in refusal messages
    long double v = 1;
    for (int k = 2; k <= S.degree; ++k) v *= k;
    const long double bytes = v * static_cast<long double>(S.size()) * 8;
    return bytes > 1e18L ? static_cast<std::uint64_t>(1e18L)
                         : static_cast<std::uint64_t>(bytes);
  }

  struct Plan {
    bool feasible = false;
    std::uint64_t vertices = 0;
  };

  static Plan explicit_plan(const GenSet& S, const BuildOptions& opts) {
    Plan p;
    if (standard_like(S)) {
      if (S.degree > 12) return p;
      p.vertices = factorial(S.degree);
    } else {
      // custom sets settle their vertex universe during the actual build;
      // plan conservatively from the full group order when it is known
      if (S.degree > 12) return p;
      p.vertices = factorial(S.degree);
    }
    const std::uint64_t bytes = p.vertices * S.size() * sizeof(std::uint32_t);
    p.feasible = bytes <= opts.memory_budget;
    return p;
  }

  static std::size_t closure_cap(std::uint64_t budget, int n) {
    const std::uint64_t per_element = sizeof(Permutation) + 16 +
                                      static_cast<std::uint64_t>(n) * sizeof(int);
    const std::uint64_t cap = budget / (2 * per_element);
    return static_cast<std::size_t>(std::min<std::uint64_t>(cap, 40'000'000));
  }

  void fill_adjacency(unsigned workers) {
    const std::uint64_t vcount = *vcount_;
    const std::size_t k = valency();
    if (lehmer_) {
      const int n = degree();
      const std::uint64_t chunk = 1 << 16;
      const std::uint64_t jobs = (vcount + chunk - 1) / chunk;
      // raw image tables of the generators, for allocation-free composition
      std::vector<std::vector<int>> gens;
      for (const auto& s : genset_.elements) gens.push_back(s.raw());
      for_each_job(jobs, workers, [&](std::size_t job) {
        const std::uint64_t lo = static_cast<std::uint64_t>(job) * chunk;
        const std::uint64_t hi = std::min(vcount, lo + chunk);
        std::array<int, 20> g{};
        std::array<int, 20> h{};
        for (std::uint64_t v = lo; v < hi; ++v) {
          detail::unrank_images(v, n, g.data());
          for (std::size_t j = 0; j < k; ++j) {
            const int* s = gens[j].data();
            for (int x = 0; x < n; ++x)
              h[static_cast<std::size_t>(x)] = g[static_cast<std::size_t>(s[x])];
            adjacency_[static_cast<std::size_t>(v) * k + j] =
                static_cast<std::uint32_t>(detail::rank_images(h.data(), n));
          }
        }
      });
    } else {
      for (std::uint64_t v = 0; v < vcount; ++v) {
        for (std::size_t j = 0; j < k; ++j) {
          const Permutation h =
              genset_.elements[j] * vertices_[static_cast<std::size_t>(v)];
          adjacency_[static_cast<std::size_t>(v) * k + j] = index_.at(h);
        }
      }
    }
  }

  bool bfs_connected() const {
    const std::uint64_t vcount = *vcount_;
    if (vcount == 0) return true;
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(vcount), 0);
    std::vector<std::uint32_t> frontier{0};
    seen[0] = 1;
    std::uint64_t reached = 1;
    while (!frontier.empty()) {
      std::vector<std::uint32_t> next;
      for (std::uint32_t v : frontier) {
        const std::uint32_t* r = row(v);
        for (std::size_t j = 0; j < valency(); ++j) {
          const std::uint32_t w = r[j];
          if (!seen[w]) {
            seen[w] = 1;
            ++reached;
            next.push_back(w);
          }
        }
      }
      frontier = std::move(next);
    }
    return reached == vcount;
  }

  void require_explicit() const {
    if (mode_ != GraphMode::explicit_adjacency)
      throw std::logic_error("operation requires an explicit-mode graph");
  }

  GenSet genset_;
  GraphMode mode_ = GraphMode::implicit_oracle;
  std::optional<std::uint64_t> vcount_;
  bool lehmer_ = true;
  std::vector<std::uint32_t> adjacency_;
  std::vector<Permutation> vertices_;
  std::unordered_map<Permutation, std::uint32_t, Permutation::Hash> index_;
  std::optional<bool> connected_;
};

// BFS ball around `center` using only the neighbor oracle; usable at any
// degree.  Result sorted by (distance, one-line order).
inline std::vector<std::pair<Permutation, int>> ball(const GenSet& S,
                                                     const Permutation& center,
                                                     int radius) {
  if (radius < 0) throw std::invalid_argument("ball radius must be >= 0");
  if (center.degree() != S.degree)
    throw std::invalid_argument("ball: degree mismatch");
  std::unordered_map<Permutation, int, Permutation::Hash> dist;
  dist.emplace(center, 0);
  std::vector<Permutation> frontier{center};
  for (int d = 1; d <= radius && !frontier.empty(); ++d) {
    std::vector<Permutation> next;
    for (const auto& g : frontier) {
      for (const auto& s : S.elements) {
        Permutation h = s * g;
        if (dist.emplace(h, d).second) next.push_back(std::move(h));
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::pair<Permutation, int>> out(dist.begin(), dist.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first < b.first;
  });
  return out;
}

struct LocalStructureReport {
  bool applicable = false;
  bool pass = false;
  std::string detail;
};

// Checks the radius-2 picture around the identity for the standard set:
// ten distinct vertices, and the full neighborhoods of e, c, c^-1 and t.
inline LocalStructureReport verify_local_structure(int n) {
  LocalStructureReport rep;
  if (n < 5) {
    rep.detail = "needs n >= 5 for the ten vertices to be distinct";
    return rep;
  }
  rep.applicable = true;

  const auto S = GenSet::standard(n);
  const auto e = Permutation::identity(n);
  const auto c = Permutation::n_cycle(n);
  const auto ci = c.inverse();
  const auto t = Permutation::transposition(n, 1, 2);

  const auto b = ball(S, e, 2);
  std::unordered_map<Permutation, int, Permutation::Hash> dist(b.begin(), b.end());

  const std::vector<std::pair<Permutation, int>> expected = {
      {e, 0},          {c, 1},      {ci, 1},     {t, 1},      {c * c, 2},
      {ci * ci, 2},    {c * t, 2},  {ci * t, 2}, {t * c, 2},  {t * ci, 2},
  };
  if (b.size() != expected.size()) {
    rep.detail = "radius-2 ball has " + std::to_string(b.size()) +
                 " vertices, expected 10";
    return rep;
  }
  for (const auto& [v, d] : expected) {
    const auto it = dist.find(v);
    if (it == dist.end() || it->second != d) {
      rep.detail = "vertex " + v.cycle_string() + " missing or at wrong distance";
      return rep;
    }
  }

  auto nbr_set = [&](const Permutation& g) {
    auto ns = neighbors(g, S);
    std::sort(ns.begin(), ns.end());
    return ns;
  };
  auto sorted = [](std::vector<Permutation> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (nbr_set(e) != sorted({c, ci, t}) ||
      nbr_set(c) != sorted({e, t * c, c * c}) ||
      nbr_set(ci) != sorted({e, t * ci, ci * ci}) ||
      nbr_set(t) != sorted({e, c * t, ci * t})) {
    rep.detail = "a neighborhood differs from the expected local picture";
    return rep;
  }

  rep.pass = true;
  return rep;
}

}  // namespace sncay
