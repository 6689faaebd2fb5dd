#pragma once

#include <cstddef>
#include <vector>

#include "samst/graph.hpp"

namespace samst {

struct MstResult {
  EdgeSubset tree;
  double weight = 0.0;
};

/// Kruskal's algorithm; equal weights are taken in edge-index order.
MstResult kruskal_mst(const Graph& g);

/// All spanning trees by backtracking over edge indices. Intended for
/// n <= 8. Throws Error(CapExceeded) once more than `cap` trees are found.
std::vector<EdgeSubset> enumerate_spanning_trees(const Graph& g, std::size_t cap = 1'000'000);

/// Kirchhoff's matrix-tree count: determinant of a reduced Laplacian,
/// Gaussian elimination with partial pivoting.
double matrix_tree_count(const Graph& g);

/// True when x selects exactly n-1 edges forming a connected subgraph.
bool is_spanning_tree(const Graph& g, const EdgeSubset& x);

/// Tree edge weights in non-increasing order (length n-1).
struct SortedWeights {
  std::vector<double> values;

  double sum() const;
};

/// Throws Error(NotASpanningTree).
SortedWeights sorted_weights(const Graph& g, const EdgeSubset& tree);

/// Rank-by-rank comparison of a candidate spanning tree with the MST.
struct ApproxReport {
  double tree_weight = 0.0;
  double opt_weight = 0.0;
  double ratio = 1.0;
  /// candidate(k) / mst(k) for each rank k of the decreasingly sorted lists.
  std::vector<double> per_rank_ratios;
  /// Every per-rank ratio is >= 1.
  bool dominance_ok = true;
  /// Every per-rank ratio is < 1 + kappa.
  bool within_kappa = true;
};

/// Throws Error(NotASpanningTree).
ApproxReport rankwise_check(const Graph& g, const EdgeSubset& candidate, double kappa);

}  // namespace samst
