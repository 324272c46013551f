#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "edgedom/domination.hpp"
#include "edgedom/ext_nat.hpp"
#include "edgedom/graph.hpp"
#include "edgedom/structure.hpp"

namespace edgedom {

enum class Domination { kEdge, kTotal };

struct SolveResult {
  ExtNat value;
  std::optional<EdgeSet> witness;
};

inline constexpr std::size_t kOracleHardLimit = 128;

struct OracleOptions {
  std::size_t edge_cap = 24;
};

namespace detail {

struct Mask {
  std::array<std::uint64_t, 2> w{};

  void set(unsigned i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(unsigned i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(unsigned i) const { return (w[i >> 6] >> (i & 63)) & 1U; }
  bool any() const { return (w[0] | w[1]) != 0; }
  int count() const { return std::popcount(w[0]) + std::popcount(w[1]); }
  int first() const {
    if (w[0] != 0) return std::countr_zero(w[0]);
    if (w[1] != 0) return 64 + std::countr_zero(w[1]);
    return -1;
  }
  Mask operator|(const Mask& o) const { return {{w[0] | o.w[0], w[1] | o.w[1]}}; }
  Mask operator&(const Mask& o) const { return {{w[0] & o.w[0], w[1] & o.w[1]}}; }
  Mask minus(const Mask& o) const { return {{w[0] & ~o.w[0], w[1] & ~o.w[1]}}; }
  bool intersects(const Mask& o) const { return ((w[0] & o.w[0]) | (w[1] & o.w[1])) != 0; }

  template <class F>
  void for_each(F&& f) const {
    for (unsigned word = 0; word < 2; ++word) {
      std::uint64_t bits = w[word];
      while (bits != 0) {
        f(word * 64 + static_cast<unsigned>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }
};

inline Mask mask_of(const EdgeSet& f) {
  Mask m;
  for (EdgeId e : f) m.set(e);
  return m;
}

inline EdgeSet edge_set_of(const Mask& m) {
  std::vector<EdgeId> ids;
  m.for_each([&](unsigned e) { ids.push_back(e); });
  return EdgeSet(std::move(ids));
}

// Exact set-cover search: choose edges so that every target edge is covered.
// Choosing f covers its open (total) or closed (plain) edge neighborhood.
class CoverSearch {
 public:
  CoverSearch(const Graph& g, Domination mode, Mask predominated, Mask forbidden)
      : m_(g.num_edges()), cover_(m_), forbidden0_(forbidden) {
    for (EdgeId e = 0; e < m_; ++e) all_.set(e);
    for (EdgeId e = 0; e < m_; ++e) {
      if (mode == Domination::kEdge) cover_[e].set(e);
      for (VertexId x : {g.edge(e).u, g.edge(e).v}) {
        for (EdgeId f : g.incident(x)) {
          if (f != e) cover_[e].set(f);
        }
      }
    }
    // Neighborhood relations are symmetric, so dominators of e equal cover_[e].
    covered0_ = predominated & all_;
  }

  // Some edge can never be covered.
  bool infeasible() const {
    bool bad = false;
    all_.minus(covered0_).for_each([&](unsigned e) {
      if (!cover_[e].minus(forbidden0_).any()) bad = true;
    });
    return bad;
  }

  std::size_t initial_lower_bound() const { return packing_bound(covered0_, forbidden0_); }

  std::optional<Mask> find(std::size_t k) {
    std::optional<Mask> found;
    limit_ = k;
    visit_ = [&](const Mask& chosen) {
      found = chosen;
      return false;
    };
    recurse(Mask{}, covered0_, forbidden0_, 0);
    return found;
  }

  // Visits every cover of size at most k reached without redundant picks;
  // when k is the optimum this is exactly the set of minimum covers.
  void enumerate(std::size_t k, std::function<bool(const Mask&)> visit) {
    limit_ = k;
    visit_ = std::move(visit);
    recurse(Mask{}, covered0_, forbidden0_, 0);
  }

 private:
  std::size_t packing_bound(const Mask& covered, const Mask& forbidden) const {
    // Uncovered edges whose candidate sets are pairwise disjoint each need
    // their own pick.
    std::array<std::pair<int, unsigned>, kOracleHardLimit> order{};
    std::size_t n = 0;
    all_.minus(covered).for_each([&](unsigned e) {
      order[n++] = {cover_[e].minus(forbidden).count(), e};
    });
    std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n));
    Mask used;
    std::size_t bound = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Mask cand = cover_[order[i].second].minus(forbidden);
      if (!cand.intersects(used)) {
        used = used | cand;
        ++bound;
      }
    }
    return bound;
  }

  // Returns false when the visitor asked to stop.
  bool recurse(Mask chosen, Mask covered, Mask forbidden, std::size_t count) {
    const Mask open = all_.minus(covered);
    if (!open.any()) return visit_(chosen);
    if (count >= limit_) return true;

    int best_edge = -1;
    int best_count = 1 << 30;
    bool dead = false;
    open.for_each([&](unsigned e) {
      const int c = cover_[e].minus(forbidden).count();
      if (c == 0) dead = true;
      if (c < best_count) {
        best_count = c;
        best_edge = static_cast<int>(e);
      }
    });
    if (dead) return true;
    if (count + packing_bound(covered, forbidden) > limit_) return true;

    const Mask candidates = cover_[static_cast<unsigned>(best_edge)].minus(forbidden);
    bool keep_going = true;
    candidates.for_each([&](unsigned c) {
      if (!keep_going) return;
      Mask next = chosen;
      next.set(c);
      keep_going = recurse(next, covered | cover_[c], forbidden, count + 1);
      forbidden.set(c);
    });
    return keep_going;
  }

  std::size_t m_;
  std::vector<Mask> cover_;
  Mask all_;
  Mask covered0_;
  Mask forbidden0_;
  std::size_t limit_ = 0;
  std::function<bool(const Mask&)> visit_;
};

inline void check_oracle_input(const Graph& g, const OracleOptions& options) {
  if (options.edge_cap > kOracleHardLimit) {
    throw Error(ErrorKind::kInvalidInput,
                "oracle edge cap above " + std::to_string(kOracleHardLimit));
  }
  if (g.num_edges() > options.edge_cap) {
    throw Error(ErrorKind::kOracleTooLarge,
                std::to_string(g.num_edges()) + " edges exceeds the oracle cap of " +
                    std::to_string(options.edge_cap));
  }
  if (!is_connected(g)) throw Error(ErrorKind::kInvalidInput, "graph is disconnected");
}

// Minimum cover with some edges already dominated and some edges banned.
inline SolveResult constrained_minimum(const Graph& g, Domination mode, const Mask& predominated,
                                       const Mask& forbidden) {
  CoverSearch search(g, mode, predominated, forbidden);
  if (search.infeasible()) return {kInf, std::nullopt};
  for (std::size_t k = search.initial_lower_bound(); k <= g.num_edges(); ++k) {
    if (auto found = search.find(k)) {
      return {ExtNat(static_cast<std::uint64_t>(found->count())), edge_set_of(*found)};
    }
  }
  return {kInf, std::nullopt};
}

}  // namespace detail

inline SolveResult brute_min(const Graph& g, Domination mode, const OracleOptions& options = {}) {
  detail::check_oracle_input(g, options);
  return detail::constrained_minimum(g, mode, {}, {});
}

inline SolveResult brute_min_ed(const Graph& g, const OracleOptions& options = {}) {
  return brute_min(g, Domination::kEdge, options);
}

inline SolveResult brute_min_ted(const Graph& g, const OracleOptions& options = {}) {
  return brute_min(g, Domination::kTotal, options);
}

// Calls `visit` on every minimum ED-set (or TED-set) until it returns false.
// Returns the optimum.
inline ExtNat enumerate_minimum_sets(const Graph& g, Domination mode,
                                     const std::function<bool(const EdgeSet&)>& visit,
                                     const OracleOptions& options = {}) {
  const SolveResult best = brute_min(g, mode, options);
  if (best.value.is_infinite()) return best.value;
  detail::CoverSearch search(g, mode, {}, {});
  search.enumerate(best.value.value(),
                   [&](const detail::Mask& m) { return visit(detail::edge_set_of(m)); });
  return best.value;
}

// True iff some minimum set uses no edge incident to a degree-1 vertex.
// Searches the minimum sets with leaf edges excluded up front.
inline bool exists_min_set_avoiding_leaf_edges(const Graph& g, bool total,
                                               const OracleOptions& options = {}) {
  const Domination mode = total ? Domination::kTotal : Domination::kEdge;
  const SolveResult best = brute_min(g, mode, options);
  if (best.value.is_infinite()) return false;
  detail::Mask leaf_edges;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (g.is_leaf_edge(e)) leaf_edges.set(e);
  }
  detail::CoverSearch search(g, mode, {}, leaf_edges);
  if (search.infeasible()) return false;
  return search.find(best.value.value()).has_value();
}

}  // namespace edgedom
