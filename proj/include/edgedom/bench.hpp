#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdint>
#include <string>
#include <vector>

#include "edgedom/shapes.hpp"
#include "edgedom/tree_dp.hpp"

namespace edgedom {

struct BenchRow {
  std::size_t size = 0;  // vertices
  std::size_t edges = 0;
  std::uint64_t ns = 0;  // fastest of the timed runs: rooting plus the four-state DP
  double ns_per_edge = 0;
};

struct BenchOptions {
  // Each size is timed until about this many edges have been solved, with
  // at least `min_runs` runs. Every run gets its own random tree so that
  // small sizes cannot warm the branch predictor on one fixed input.
  std::size_t work_edges = 2'000'000;
  std::size_t min_runs = 3;
};

// Fastest run of rooting plus the four-state DP with witness recovery.
inline BenchRow bench_size(std::size_t size, std::uint64_t seed, const BenchOptions& options = {}) {
  if (size < 2) throw Error(ErrorKind::kInvalidInput, "bench sizes must be at least 2");
  BenchRow row;
  row.size = size;
  row.edges = size - 1;
  const std::size_t runs = std::max(options.min_runs, options.work_edges / row.edges);
  std::uint64_t best = UINT64_MAX;
  volatile std::uint64_t sink = 0;
  for (std::size_t r = 0; r < runs; ++r) {
    Graph g = random_recursive_tree(size, seed + r);
    const auto start = std::chrono::steady_clock::now();
    const RootedTree rt = build_rooted(std::move(g));
    const SolveResult res = gamma_t_tree(rt);
    const auto stop = std::chrono::steady_clock::now();
    sink = sink + (res.value.is_finite() ? res.value.value() : 0);
    best = std::min<std::uint64_t>(
        best, static_cast<std::uint64_t>(
                  std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count()));
  }
  row.ns = best;
  row.ns_per_edge = static_cast<double>(row.ns) / static_cast<double>(row.edges);
  return row;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "size,ns,ns_per_edge\n";
  for (const BenchRow& r : rows) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu,%llu,%.3f\n", r.size,
                  static_cast<unsigned long long>(r.ns), r.ns_per_edge);
    out += buf;
  }
  return out;
}

}  // namespace edgedom
