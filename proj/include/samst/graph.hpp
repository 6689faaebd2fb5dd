#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace samst {

/// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n = 0);

  void reset(std::size_t n);
  std::size_t find(std::size_t x);
  /// Returns true if the two elements were in different sets.
  bool unite(std::size_t a, std::size_t b);
  std::size_t set_count() const noexcept { return sets_; }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::size_t sets_ = 0;
};

struct Edge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  double w = 0.0;
};

/// Immutable, connected, positively weighted undirected graph. Parallel edges
/// are allowed, self-loops are not.
class Graph {
 public:
  /// Validates and builds. Throws Error with BadVertexIndex, NonPositiveWeight
  /// or DisconnectedInput.
  static Graph build(std::size_t n, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }
  double weight(std::size_t i) const { return edges_[i].w; }
  double w_min() const noexcept { return w_min_; }
  double w_max() const noexcept { return w_max_; }
  double total_weight() const noexcept { return total_; }

 private:
  Graph() = default;

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  double w_min_ = 0.0;
  double w_max_ = 0.0;
  double total_ = 0.0;
};

inline Graph build_graph(std::size_t n, std::vector<Edge> edges) {
  return Graph::build(n, std::move(edges));
}

/// Objective value: the selected weight sum for connected subsets, otherwise
/// the Infeasible sentinel, which orders above every finite value.
class Fitness {
 public:
  static Fitness infeasible() noexcept { return Fitness(); }
  static Fitness finite(double value) noexcept { return Fitness(value); }

  bool is_finite() const noexcept { return finite_; }
  /// Throws Error(DomainError) on Infeasible.
  double value() const;

  friend bool operator==(const Fitness&, const Fitness&) = default;
  friend std::partial_ordering operator<=>(const Fitness& a, const Fitness& b) noexcept;

 private:
  Fitness() = default;
  explicit Fitness(double v) : finite_(true), value_(v) {}

  bool finite_ = false;
  double value_ = 0.0;
};

/// The search state: one bit per edge plus cached connectivity of (V, E(x)).
class EdgeSubset {
 public:
  static EdgeSubset all_ones(const Graph& g);
  static EdgeSubset none(const Graph& g);
  static EdgeSubset from_bits(const Graph& g, std::span<const std::uint8_t> bits);
  /// Parses a string of '0'/'1' characters, bit i being character i.
  static EdgeSubset from_string(const Graph& g, std::string_view bits);
  static EdgeSubset from_edges(const Graph& g, std::span<const std::size_t> selected);

  std::size_t size() const noexcept { return bits_.size(); }
  bool test(std::size_t i) const { return bits_.at(i) != 0; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::size_t selected_count() const noexcept { return selected_; }
  std::size_t component_count() const noexcept { return components_; }
  bool connected() const noexcept { return components_ == 1; }
  bool same_component(std::size_t a, std::size_t b) const { return label_[a] == label_[b]; }
  std::vector<std::size_t> selected_edges() const;
  std::string to_string() const;

  /// Toggles bit i in place. Insertions merge labels directly; removals
  /// relabel with union-find over the remaining selected edges.
  void toggle(const Graph& g, std::size_t i);

  /// True when edge i is selected and removing it would split its component.
  bool removal_disconnects(const Graph& g, std::size_t i, DisjointSets& scratch) const;
  bool removal_disconnects(const Graph& g, std::size_t i) const;

  friend bool operator==(const EdgeSubset& a, const EdgeSubset& b) { return a.bits_ == b.bits_; }

 private:
  void relabel(const Graph& g);

  std::vector<std::uint8_t> bits_;
  std::vector<std::uint32_t> label_;
  std::size_t selected_ = 0;
  std::size_t components_ = 0;
};

/// Neighbor of x with bit i toggled. Throws Error(IndexOutOfRange).
EdgeSubset flip(const Graph& g, const EdgeSubset& x, std::size_t i);

Fitness fitness(const Graph& g, const EdgeSubset& x);

/// Components of (V, E(x)) recomputed from scratch, ignoring the cache.
std::size_t count_components(const Graph& g, std::span<const std::uint8_t> bits);

/// Components of (V, {e : w(e) <= threshold}).
std::size_t component_count_below(const Graph& g, double threshold);

}  // namespace samst
