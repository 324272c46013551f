#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "edgedom/domination.hpp"
#include "edgedom/ext_nat.hpp"
#include "edgedom/graph.hpp"
#include "edgedom/oracle.hpp"
#include "edgedom/structure.hpp"

namespace edgedom {

// Tree rooted at a leaf, with edges listed bottom-up by level.
class RootedTree {
 public:
  const Graph& graph() const { return graph_; }
  VertexId root() const { return root_; }
  std::size_t num_edges() const { return graph_.num_edges(); }

  const std::vector<EdgeId>& edge_order() const { return order_; }
  EdgeId parent(EdgeId e) const { return parent_[e]; }
  // Endpoint of e away from the root.
  VertexId lower(EdgeId e) const { return lower_[e]; }

  // Edges meeting e at its lower endpoint, ascending by id.
  std::span<const EdgeId> children(EdgeId e) const {
    return {child_list_.data() + child_offsets_[e], child_list_.data() + child_offsets_[e + 1]};
  }

  EdgeId root_edge() const { return order_.back(); }

  // Breadth-first slot layout. Slot 0 holds the root edge; the children of
  // slot p fill slots [first_child(p), first_child(p + 1)) in ascending edge
  // id, so a reverse sweep over slots is a bottom-up order.
  EdgeId slot_edge(std::size_t p) const { return slot_edge_[p]; }
  std::size_t first_child(std::size_t p) const { return slot_first_child_[p]; }

 private:
  friend RootedTree build_rooted(Graph g, std::optional<VertexId> root);

  Graph graph_;
  VertexId root_ = kNoVertex;
  std::vector<EdgeId> order_;
  std::vector<EdgeId> parent_;
  std::vector<VertexId> lower_;
  std::vector<std::size_t> child_offsets_;
  std::vector<EdgeId> child_list_;
  std::vector<EdgeId> slot_edge_;
  std::vector<std::uint32_t> slot_first_child_;
};

// Roots `g` at `root`, or at the lowest-id leaf when none is given.
inline RootedTree build_rooted(Graph g, std::optional<VertexId> root = std::nullopt) {
  const std::size_t n = g.num_vertices();
  const std::size_t m = g.num_edges();
  // Connectivity is confirmed by the BFS below.
  if (m == 0 || m + 1 != n) {
    throw Error(ErrorKind::kNotATree, "input is not a tree with at least one edge");
  }
  if (root) {
    if (*root >= n) throw Error(ErrorKind::kInvalidRoot, "root vertex does not exist");
    if (g.degree(*root) != 1) {
      throw Error(ErrorKind::kInvalidRoot, "root " + g.name(*root) + " is not a leaf");
    }
  } else {
    for (VertexId v = 0; v < n; ++v) {
      if (g.degree(v) == 1) {
        root = v;
        break;
      }
    }
  }

  RootedTree rt;
  rt.root_ = *root;

  std::vector<std::uint32_t> level(n, 0);
  std::vector<EdgeId> up(n, kNoEdge);
  std::vector<VertexId> queue;
  queue.reserve(n);
  queue.push_back(rt.root_);
  std::vector<bool> seen(n, false);
  seen[rt.root_] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId v = queue[head];
    for (EdgeId e : g.incident(v)) {
      const VertexId w = g.other_end(e, v);
      if (!seen[w]) {
        seen[w] = true;
        level[w] = level[v] + 1;
        up[w] = e;
        queue.push_back(w);
      }
    }
  }
  if (queue.size() != n) {
    throw Error(ErrorKind::kNotATree, "input is not a tree with at least one edge");
  }

  rt.lower_.resize(m);
  rt.parent_.resize(m);
  std::uint32_t height = 0;
  for (EdgeId e = 0; e < m; ++e) {
    const Edge& ed = g.edge(e);
    const VertexId low = level[ed.u] > level[ed.v] ? ed.u : ed.v;
    const VertexId high = g.other_end(e, low);
    rt.lower_[e] = low;
    rt.parent_[e] = up[high];
    height = std::max(height, level[low]);
  }

  // Counting sort by decreasing level; ties keep ascending edge id.
  std::vector<std::size_t> bucket(height + 2, 0);
  for (EdgeId e = 0; e < m; ++e) ++bucket[height - level[rt.lower_[e]] + 1];
  for (std::size_t i = 1; i < bucket.size(); ++i) bucket[i] += bucket[i - 1];
  rt.order_.resize(m);
  for (EdgeId e = 0; e < m; ++e) rt.order_[bucket[height - level[rt.lower_[e]]]++] = e;

  rt.child_offsets_.assign(m + 1, 0);
  for (EdgeId e = 0; e < m; ++e) rt.child_offsets_[e + 1] = rt.child_offsets_[e] + g.degree(rt.lower_[e]) - 1;
  rt.child_list_.resize(rt.child_offsets_[m]);
  for (EdgeId e = 0; e < m; ++e) {
    std::size_t at = rt.child_offsets_[e];
    for (EdgeId f : g.incident(rt.lower_[e])) {
      if (f != e) rt.child_list_[at++] = f;
    }
  }
  // Vertex BFS order lists each vertex's parent edges consecutively.
  rt.slot_edge_.resize(m);
  rt.slot_first_child_.resize(m + 1);
  std::uint32_t next = 1;
  for (std::size_t p = 0; p < m; ++p) {
    const VertexId v = queue[p + 1];
    rt.slot_edge_[p] = up[v];
    rt.slot_first_child_[p] = next;
    next += static_cast<std::uint32_t>(g.degree(v) - 1);
  }
  rt.slot_first_child_[m] = next;
  rt.graph_ = std::move(g);
  return rt;
}

enum class State : std::uint8_t { kIn = 0, kOut = 1, kInIsolated = 2, kOutUndominated = 3 };

// (g1, g0, g1bar, g0bar) for the subtree hanging below an edge.
struct FourValues {
  ExtNat g1 = kInf;
  ExtNat g0 = kInf;
  ExtNat g1bar = kInf;
  ExtNat g0bar = kInf;

  ExtNat operator[](State s) const {
    switch (s) {
      case State::kIn: return g1;
      case State::kOut: return g0;
      case State::kInIsolated: return g1bar;
      case State::kOutUndominated: return g0bar;
    }
    return kInf;
  }
  ExtNat min() const { return std::min(std::min(g1, g0), std::min(g1bar, g0bar)); }
  bool operator==(const FourValues&) const = default;
};

inline constexpr FourValues leaf_base_values() { return {kInf, kInf, ExtNat(1), ExtNat(0)}; }

struct ChildSummary {
  ExtNat theta = kInf;
  std::array<bool, 4> attainers{};  // indexed by State

  bool attains(State s) const { return attainers[static_cast<int>(s)]; }
};

inline ChildSummary summarize(const FourValues& v) {
  ChildSummary s;
  s.theta = v.min();
  for (State st : {State::kIn, State::kOut, State::kInIsolated, State::kOutUndominated}) {
    s.attainers[static_cast<int>(st)] = v[st] == s.theta;
  }
  return s;
}

namespace detail {

enum class Mode : std::uint8_t { kNone, kTheta, kNonProvider, kAllOut };

// How the children of one edge are set for one of its states.
struct Choice {
  Mode mode = Mode::kNone;
  State self = State::kOutUndominated;  // state of the T^0 part
  std::int32_t pick1 = -1;               // child index forced to a provider state
  std::int32_t pick2 = -1;
};

using Choices = std::array<Choice, 4>;

inline State theta_state(const FourValues& v) {
  const ExtNat t = v.min();
  if (v.g0 == t) return State::kOut;
  if (v.g1 == t) return State::kIn;
  if (v.g0bar == t) return State::kOutUndominated;
  return State::kInIsolated;
}

inline State provider_state(const FourValues& v) {
  return v.g1 <= v.g1bar ? State::kIn : State::kInIsolated;
}

inline State non_provider_state(const FourValues& v) {
  return v.g0 <= v.g0bar ? State::kOut : State::kOutUndominated;
}

// State a child takes under `c` (child index j).
inline State child_state(const Choice& c, std::int32_t j, const FourValues& v) {
  switch (c.mode) {
    case Mode::kTheta:
      return (j == c.pick1 || j == c.pick2) ? provider_state(v) : theta_state(v);
    case Mode::kNonProvider:
      return j == c.pick1 ? State::kIn : non_provider_state(v);
    case Mode::kAllOut:
    case Mode::kNone:
      break;
  }
  return State::kOut;
}

inline constexpr std::int64_t kBig = std::int64_t{1} << 62;

inline std::int64_t as_int(ExtNat x) {
  return x.is_finite() ? static_cast<std::int64_t>(x.value()) : kBig;
}

// Min-cost state assignment for an edge over its children. `child(j)` yields
// the j-th child's values. O(q).
template <class ChildFn>
FourValues combine_impl(const FourValues& t0, std::size_t q, ChildFn child, Choices* out) {
  ExtNat sum_theta = 0;
  ExtNat sum_g0 = 0;
  ExtNat sum_non_provider = 0;
  ExtNat sum_finite_non_provider = 0;
  std::size_t infinite_non_provider = 0;
  std::int32_t infinite_non_provider_at = -1;
  // Cheapest and second-cheapest upgrade to a provider state.
  ExtNat d1 = kInf, d2 = kInf;
  std::int32_t j1 = -1, j2 = -1;
  // Best single provider in state 1 measured against its non-provider cost.
  std::int64_t best_swap = kBig;
  std::int32_t best_swap_at = -1;

  for (std::size_t idx = 0; idx < q; ++idx) {
    const std::int32_t j = static_cast<std::int32_t>(idx);
    const FourValues& c = child(idx);
    const ExtNat theta = c.min();
    const ExtNat provider = std::min(c.g1, c.g1bar);
    const ExtNat non_provider = std::min(c.g0, c.g0bar);
    sum_theta += theta;
    sum_g0 += c.g0;
    sum_non_provider += non_provider;
    if (non_provider.is_finite()) {
      sum_finite_non_provider += non_provider;
    } else {
      ++infinite_non_provider;
      infinite_non_provider_at = j;
    }
    ExtNat delta = kInf;
    if (provider.is_finite() && theta.is_finite()) delta = ExtNat(provider.value() - theta.value());
    if (delta < d1) {
      d2 = d1;
      j2 = j1;
      d1 = delta;
      j1 = j;
    } else if (delta < d2) {
      d2 = delta;
      j2 = j;
    }
    if (c.g1.is_finite()) {
      const std::int64_t swap = as_int(c.g1) - as_int(non_provider);
      if (swap < best_swap) {
        best_swap = swap;
        best_swap_at = j;
      }
    }
  }

  FourValues r;
  Choices ch{};

  // g1: e^0 in the set. Its partner is on the T^0 side or is a child.
  {
    const ExtNat a = t0.g1 + sum_theta;
    const ExtNat b = (q > 0 && j1 >= 0) ? t0.g1bar + sum_theta + d1 : kInf;
    if (a <= b) {
      r.g1 = a;
      ch[0] = {Mode::kTheta, State::kIn, -1, -1};
    } else {
      r.g1 = b;
      ch[0] = {Mode::kTheta, State::kInIsolated, j1, -1};
    }
  }

  // g0: e^0 excluded.
  {
    const State base_state = t0.g0 <= t0.g0bar ? State::kOut : State::kOutUndominated;
    const ExtNat base = std::min(t0.g0, t0.g0bar);
    // No provider among the children.
    const ExtNat none = t0.g0 + sum_g0;
    // Exactly one provider, in state 1.
    ExtNat one = kInf;
    std::int32_t one_at = -1;
    if (infinite_non_provider == 0) {
      if (best_swap_at >= 0) {
        const std::int64_t total = as_int(sum_finite_non_provider) + best_swap;
        one = base + ExtNat(static_cast<std::uint64_t>(total));
        one_at = best_swap_at;
      }
    } else if (infinite_non_provider == 1) {
      const FourValues& c = child(static_cast<std::size_t>(infinite_non_provider_at));
      if (c.g1.is_finite()) {
        one = base + c.g1 + sum_finite_non_provider;
        one_at = infinite_non_provider_at;
      }
    }
    // At least two providers.
    const ExtNat two = (j2 >= 0) ? base + sum_theta + d1 + d2 : kInf;

    r.g0 = none;
    ch[1] = {Mode::kAllOut, State::kOut, -1, -1};
    if (one < r.g0) {
      r.g0 = one;
      ch[1] = {Mode::kNonProvider, base_state, one_at, -1};
    }
    if (two < r.g0) {
      r.g0 = two;
      ch[1] = {Mode::kTheta, base_state, j1, j2};
    }
  }

  r.g1bar = t0.g1bar + sum_non_provider;
  ch[2] = {Mode::kNonProvider, State::kInIsolated, -1, -1};
  r.g0bar = t0.g0bar + sum_g0;
  ch[3] = {Mode::kAllOut, State::kOutUndominated, -1, -1};

  if (out != nullptr) *out = ch;
  return r;
}

}  // namespace detail

inline FourValues combine(const FourValues& t0, std::span<const FourValues> children) {
  return detail::combine_impl(
      t0, children.size(), [&](std::size_t j) -> const FourValues& { return children[j]; },
      nullptr);
}

// Literal case analysis for the four values. The g0 entry is empty when no
// case guard applies or a needed difference is undefined.
struct ClosedForm {
  ExtNat g1 = kInf;
  std::optional<ExtNat> g0;
  int g0_case = 0;  // 1..5, 0 when no guard applied
  ExtNat g1bar = kInf;
  ExtNat g0bar = kInf;
};

inline ClosedForm closed_form(const FourValues& t0, std::span<const FourValues> children) {
  ClosedForm out;
  ExtNat sum_theta = 0;
  std::size_t a1 = 0, a2 = 0, a3 = 0, a4 = 0;
  for (const FourValues& c : children) {
    const ExtNat theta = c.min();
    sum_theta += theta;
    a1 += c.g1 == theta;
    a2 += c.g0 == theta;
    a3 += c.g1bar == theta;
    a4 += c.g0bar == theta;
  }

  if (a1 + a3 > 0) {
    out.g1 = std::min(t0.g1, t0.g1bar) + sum_theta;
  } else {
    out.g1 = std::min(t0.g1, t0.g1bar + 1) + sum_theta;
  }

  const ExtNat base = std::min(t0.g0, t0.g0bar);
  if (a1 > 0 || a3 >= 2) {
    out.g0 = base + sum_theta;
    out.g0_case = 1;
  } else if ((a1 == 0 && a3 == 1) || (a1 == 0 && a3 == 0 && a2 > 0 && a4 > 0)) {
    out.g0 = base + sum_theta + 1;
    out.g0_case = 2;
  } else if (a1 == 0 && a3 == 0 && a4 == 0) {
    out.g0 = std::min(t0.g0, t0.g0bar + 1) + sum_theta;
    out.g0_case = 3;
  } else if (a1 == 0 && a2 == 0 && a3 == 0) {
    bool some_one = false;
    bool all_two = true;
    for (const FourValues& c : children) {
      if (c.g0bar != c.min()) continue;
      if (c.g1.is_infinite() || c.g0bar.is_infinite()) {
        all_two = false;
        continue;
      }
      const std::uint64_t diff = c.g1.value() - c.g0bar.value();
      some_one = some_one || diff == 1;
      all_two = all_two && diff == 2;
    }
    if (some_one) {
      out.g0 = base + sum_theta + 1;
      out.g0_case = 4;
    } else if (all_two) {
      out.g0 = base + sum_theta + 2;
      out.g0_case = 5;
    }
  }

  ExtNat non_provider = 0;
  ExtNat all_out = 0;
  for (const FourValues& c : children) {
    non_provider += std::min(c.g0, c.g0bar);
    all_out += c.g0;
  }
  out.g1bar = t0.g1bar + non_provider;
  out.g0bar = t0.g0bar + all_out;
  return out;
}

namespace detail {

// Bottom-up sweep over slots. Returns values indexed by slot.
inline std::vector<FourValues> four_state_slots(const RootedTree& rt, std::vector<Choices>* choice) {
  const std::size_t m = rt.num_edges();
  std::vector<FourValues> vals(m);
  if (choice != nullptr) choice->resize(m);
  for (std::size_t p = m; p-- > 0;) {
    const std::size_t lo = rt.first_child(p);
    const std::size_t hi = rt.first_child(p + 1);
    if (lo == hi) {
      vals[p] = leaf_base_values();
    } else {
      vals[p] = combine_impl(
          leaf_base_values(), hi - lo, [&](std::size_t j) -> const FourValues& { return vals[lo + j]; },
          choice != nullptr ? &(*choice)[p] : nullptr);
    }
  }
  return vals;
}

// Members flagged per edge id, gathered in ascending order.
inline EdgeSet gather(const std::vector<char>& flag) {
  std::vector<EdgeId> ids;
  for (EdgeId e = 0; e < flag.size(); ++e) {
    if (flag[e] != 0) ids.push_back(e);
  }
  return EdgeSet::from_sorted(std::move(ids));
}

}  // namespace detail

// Per-edge values of the bottom-up sweep, indexed by edge id.
inline std::vector<FourValues> four_state_table(const RootedTree& rt) {
  const std::vector<FourValues> slots = detail::four_state_slots(rt, nullptr);
  std::vector<FourValues> vals(rt.num_edges());
  for (std::size_t p = 0; p < slots.size(); ++p) vals[rt.slot_edge(p)] = slots[p];
  return vals;
}

// Minimum TED-set of a tree with a witness. Infinite only for K2.
inline SolveResult gamma_t_tree(const RootedTree& rt) {
  const std::size_t m = rt.num_edges();
  std::vector<detail::Choices> choice;
  const std::vector<FourValues> vals = detail::four_state_slots(rt, &choice);

  const FourValues& rv = vals[0];
  const ExtNat best = std::min(rv.g1, rv.g0);
  if (best.is_infinite()) return {kInf, std::nullopt};

  // Top-down pass: parents precede children in slot order.
  std::vector<State> state(m);
  std::vector<char> member(m, 0);
  state[0] = rv.g1 <= rv.g0 ? State::kIn : State::kOut;
  for (std::size_t p = 0; p < m; ++p) {
    const State s = state[p];
    if (s == State::kIn || s == State::kInIsolated) member[rt.slot_edge(p)] = 1;
    const std::size_t lo = rt.first_child(p);
    const std::size_t hi = rt.first_child(p + 1);
    if (lo == hi) continue;
    const detail::Choice& c = choice[p][static_cast<int>(s)];
    for (std::size_t q = lo; q < hi; ++q) {
      state[q] = detail::child_state(c, static_cast<std::int32_t>(q - lo), vals[q]);
    }
  }
  return {best, detail::gather(member)};
}

namespace detail {

// States of the plain domination DP.
struct ThreeValues {
  ExtNat in = kInf;       // edge in the set
  ExtNat covered = kInf;  // out, dominated by a child
  ExtNat pending = kInf;  // out, to be dominated from above
};

}  // namespace detail

// Minimum ED-set of a tree with a witness.
inline SolveResult gamma_tree(const RootedTree& rt) {
  using detail::ThreeValues;
  const std::size_t m = rt.num_edges();
  std::vector<ThreeValues> vals(m);
  std::vector<std::int32_t> pick(m, -1);  // child forced in for `covered`
  for (std::size_t p = m; p-- > 0;) {
    const std::size_t lo = rt.first_child(p);
    const std::size_t hi = rt.first_child(p + 1);
    if (lo == hi) {
      vals[p] = {1, kInf, 0};
      continue;
    }
    ExtNat sum_theta = 0;
    ExtNat sum_covered = 0;
    ExtNat best_delta = kInf;
    std::int32_t best_at = -1;
    for (std::size_t q = lo; q < hi; ++q) {
      const ThreeValues& c = vals[q];
      const ExtNat theta = std::min(c.in, std::min(c.covered, c.pending));
      sum_theta += theta;
      sum_covered += c.covered;
      if (c.in.is_finite() && theta.is_finite()) {
        const ExtNat delta(c.in.value() - theta.value());
        if (delta < best_delta) {
          best_delta = delta;
          best_at = static_cast<std::int32_t>(q - lo);
        }
      }
    }
    vals[p] = {sum_theta + 1, sum_theta + best_delta, sum_covered};
    pick[p] = best_at;
  }

  const ExtNat best = std::min(vals[0].in, vals[0].covered);
  enum class S3 : std::uint8_t { kIn, kCovered, kPending };
  auto theta_state = [](const ThreeValues& v) {
    const ExtNat t = std::min(v.in, std::min(v.covered, v.pending));
    if (v.pending == t) return S3::kPending;
    if (v.covered == t) return S3::kCovered;
    return S3::kIn;
  };
  std::vector<S3> state(m);
  std::vector<char> member(m, 0);
  state[0] = vals[0].in <= vals[0].covered ? S3::kIn : S3::kCovered;
  for (std::size_t p = 0; p < m; ++p) {
    const S3 s = state[p];
    if (s == S3::kIn) member[rt.slot_edge(p)] = 1;
    const std::size_t lo = rt.first_child(p);
    const std::size_t hi = rt.first_child(p + 1);
    for (std::size_t q = lo; q < hi; ++q) {
      S3 cs = S3::kCovered;
      if (s == S3::kIn) {
        cs = theta_state(vals[q]);
      } else if (s == S3::kCovered) {
        cs = static_cast<std::int32_t>(q - lo) == pick[p] ? S3::kIn : theta_state(vals[q]);
      }
      state[q] = cs;
    }
  }
  return {best, detail::gather(member)};
}

}  // namespace edgedom
