#include "samst/mst_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "samst/error.hpp"

namespace samst {

MstResult kruskal_mst(const Graph& g) {
  const auto edges = g.edges();
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return edges[a].w < edges[b].w; });

  DisjointSets dsu(g.vertex_count());
  std::vector<std::size_t> chosen;
  chosen.reserve(g.vertex_count() - 1);
  for (auto i : order) {
    if (dsu.unite(edges[i].u, edges[i].v)) {
      chosen.push_back(i);
      if (chosen.size() + 1 == g.vertex_count()) break;
    }
  }
  std::sort(chosen.begin(), chosen.end());
  double weight = 0.0;
  for (auto i : chosen) weight += edges[i].w;
  return {EdgeSubset::from_edges(g, chosen), weight};
}

std::vector<EdgeSubset> enumerate_spanning_trees(const Graph& g, std::size_t cap) {
  const std::size_t n = g.vertex_count();
  const std::size_t m = g.edge_count();
  const auto edges = g.edges();
  std::vector<EdgeSubset> out;
  std::vector<std::uint8_t> bits(m, 0);

  // Vertex labels double as a union-find that is copied on descent.
  std::function<void(std::size_t, std::size_t, std::vector<std::uint32_t>&)> recurse =
      [&](std::size_t i, std::size_t taken, std::vector<std::uint32_t>& label) {
        if (taken + 1 == n) {
          if (out.size() == cap) throw Error(ErrorCode::CapExceeded, "more than " + std::to_string(cap) + " spanning trees");
          out.push_back(EdgeSubset::from_bits(g, bits));
          return;
        }
        if (i == m || m - i < n - 1 - taken) return;
        const auto lu = label[edges[i].u];
        const auto lv = label[edges[i].v];
        if (lu != lv) {
          auto merged = label;
          for (auto& l : merged) {
            if (l == lv) l = lu;
          }
          bits[i] = 1;
          recurse(i + 1, taken + 1, merged);
          bits[i] = 0;
        }
        recurse(i + 1, taken, label);
      };

  std::vector<std::uint32_t> label(n);
  std::iota(label.begin(), label.end(), 0u);
  recurse(0, 0, label);
  return out;
}

double matrix_tree_count(const Graph& g) {
  const std::size_t n = g.vertex_count();
  const std::size_t k = n - 1;
  std::vector<double> lap(k * k, 0.0);
  auto at = [&](std::size_t r, std::size_t c) -> double& { return lap[r * k + c]; };
  for (const auto& e : g.edges()) {
    if (e.u < k) at(e.u, e.u) += 1.0;
    if (e.v < k) at(e.v, e.v) += 1.0;
    if (e.u < k && e.v < k) {
      at(e.u, e.v) -= 1.0;
      at(e.v, e.u) -= 1.0;
    }
  }
  double det = 1.0;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::abs(at(r, col)) > std::abs(at(pivot, col))) pivot = r;
    }
    if (at(pivot, col) == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t c = 0; c < k; ++c) std::swap(at(pivot, c), at(col, c));
      det = -det;
    }
    det *= at(col, col);
    for (std::size_t r = col + 1; r < k; ++r) {
      const double f = at(r, col) / at(col, col);
      for (std::size_t c = col; c < k; ++c) at(r, c) -= f * at(col, c);
    }
  }
  return det;
}

bool is_spanning_tree(const Graph& g, const EdgeSubset& x) {
  return x.size() == g.edge_count() && x.selected_count() + 1 == g.vertex_count() && x.connected();
}

double SortedWeights::sum() const {
  // Ascending summation order mirrors fitness(), which adds in edge order;
  // callers compare with a relative tolerance.
  return std::accumulate(values.rbegin(), values.rend(), 0.0);
}

SortedWeights sorted_weights(const Graph& g, const EdgeSubset& tree) {
  if (!is_spanning_tree(g, tree)) throw Error(ErrorCode::NotASpanningTree, "subset " + tree.to_string());
  SortedWeights s;
  s.values.reserve(tree.selected_count());
  for (auto i : tree.selected_edges()) s.values.push_back(g.weight(i));
  std::sort(s.values.begin(), s.values.end(), std::greater<>());
  return s;
}

ApproxReport rankwise_check(const Graph& g, const EdgeSubset& candidate, double kappa) {
  const auto cand = sorted_weights(g, candidate);
  const auto opt_tree = kruskal_mst(g);
  const auto opt = sorted_weights(g, opt_tree.tree);

  ApproxReport r;
  r.tree_weight = fitness(g, candidate).value();
  r.opt_weight = opt_tree.weight;
  r.ratio = r.tree_weight / r.opt_weight;
  r.per_rank_ratios.reserve(opt.values.size());
  for (std::size_t k = 0; k < opt.values.size(); ++k) {
    const double q = cand.values[k] / opt.values[k];
    r.per_rank_ratios.push_back(q);
    if (q < 1.0) r.dominance_ok = false;
    if (!(q < 1.0 + kappa)) r.within_kappa = false;
  }
  return r;
}

}  // namespace samst
