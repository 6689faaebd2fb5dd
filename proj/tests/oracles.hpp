#pragma once

// Independent reference implementations used only by the tests. Nothing here
// calls into the library except for plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "samst/graph.hpp"

namespace oracle {

/// Components of (V, {edges[i] : bits[i]}) by depth-first search.
inline std::size_t components(std::size_t n, const std::vector<samst::Edge>& edges, const std::vector<std::uint8_t>& bits) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!bits[i]) continue;
    adj[edges[i].u].push_back(edges[i].v);
    adj[edges[i].v].push_back(edges[i].u);
  }
  std::vector<char> seen(n, 0);
  std::size_t count = 0;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++count;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto u : adj[v]) {
        if (!seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
  }
  return count;
}

inline std::vector<samst::Edge> edge_list(const samst::Graph& g) { return {g.edges().begin(), g.edges().end()}; }

/// Random connected multigraph-free graph on n vertices with m edges.
inline std::vector<samst::Edge> random_connected(std::mt19937_64& gen, std::size_t n, std::size_t m, bool integer_weights) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  std::uniform_real_distribution<double> real(0.5, 20.0);
  std::uniform_int_distribution<int> small(1, 6);
  for (;;) {
    std::shuffle(pairs.begin(), pairs.end(), gen);
    std::vector<samst::Edge> edges;
    for (std::size_t i = 0; i < m; ++i) {
      const double w = integer_weights ? small(gen) : real(gen);
      edges.push_back({pairs[i].first, pairs[i].second, w});
    }
    if (components(n, edges, std::vector<std::uint8_t>(m, 1)) == 1) return edges;
  }
}

/// Every (n-1)-subset of edges that is acyclic and spanning, by direct
/// combination enumeration.
inline std::vector<std::vector<std::uint8_t>> spanning_trees(std::size_t n, const std::vector<samst::Edge>& edges) {
  const std::size_t m = edges.size();
  std::vector<std::vector<std::uint8_t>> out;
  if (m + 1 < n) return out;
  std::vector<std::uint8_t> mask(m, 0);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(n - 1), 1);
  // prev_permutation over a sorted-descending mask visits every combination.
  do {
    if (components(n, edges, mask) == 1) out.push_back(mask);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

inline double subset_weight(const std::vector<samst::Edge>& edges, const std::vector<std::uint8_t>& bits) {
  double s = 0.0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (bits[i]) s += edges[i].w;
  }
  return s;
}

/// Root of w e^w = x by bisection in extended precision.
inline long double lambert_bisect(long double x) {
  long double lo = 0.0L;
  long double hi = std::max(1.0L, std::log1p(x));
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    if (mid * std::exp(mid) < x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5L * (lo + hi);
}

}  // namespace oracle
