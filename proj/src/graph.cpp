#include "samst/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "samst/error.hpp"

namespace samst {

DisjointSets::DisjointSets(std::size_t n) { reset(n); }

void DisjointSets::reset(std::size_t n) {
  parent_.resize(n);
  size_.assign(n, 1);
  std::iota(parent_.begin(), parent_.end(), 0u);
  sets_ = n;
}

std::size_t DisjointSets::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = static_cast<std::uint32_t>(a);
  size_[a] += size_[b];
  --sets_;
  return true;
}

Graph Graph::build(std::size_t n, std::vector<Edge> edges) {
  if (n < 2) throw Error(ErrorCode::BadVertexIndex, "graph needs at least 2 vertices");
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::BadVertexIndex, "vertex count too large");
  }
  Graph g;
  g.n_ = n;
  g.w_min_ = std::numeric_limits<double>::infinity();
  g.w_max_ = 0.0;
  DisjointSets dsu(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.u >= n || e.v >= n) {
      throw Error(ErrorCode::BadVertexIndex, "edge " + std::to_string(i) + " has an endpoint out of range");
    }
    if (e.u == e.v) {
      throw Error(ErrorCode::BadVertexIndex, "edge " + std::to_string(i) + " is a self-loop");
    }
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw Error(ErrorCode::NonPositiveWeight, "edge " + std::to_string(i) + " has weight that is not finite positive");
    }
    g.w_min_ = std::min(g.w_min_, e.w);
    g.w_max_ = std::max(g.w_max_, e.w);
    g.total_ += e.w;
    dsu.unite(e.u, e.v);
  }
  if (dsu.set_count() != 1) {
    throw Error(ErrorCode::DisconnectedInput,
                "graph has " + std::to_string(dsu.set_count()) + " connected components");
  }
  g.edges_ = std::move(edges);
  return g;
}

double Fitness::value() const {
  if (!finite_) throw Error(ErrorCode::DomainError, "fitness is infeasible");
  return value_;
}

std::partial_ordering operator<=>(const Fitness& a, const Fitness& b) noexcept {
  if (!a.finite_ && !b.finite_) return std::partial_ordering::equivalent;
  if (!a.finite_) return std::partial_ordering::greater;
  if (!b.finite_) return std::partial_ordering::less;
  return a.value_ <=> b.value_;
}

EdgeSubset EdgeSubset::all_ones(const Graph& g) {
  std::vector<std::uint8_t> bits(g.edge_count(), 1);
  return from_bits(g, bits);
}

EdgeSubset EdgeSubset::none(const Graph& g) {
  std::vector<std::uint8_t> bits(g.edge_count(), 0);
  return from_bits(g, bits);
}

EdgeSubset EdgeSubset::from_bits(const Graph& g, std::span<const std::uint8_t> bits) {
  if (bits.size() != g.edge_count()) {
    throw Error(ErrorCode::IndexOutOfRange, "bit string length " + std::to_string(bits.size()) +
                                                " does not match edge count " + std::to_string(g.edge_count()));
  }
  EdgeSubset x;
  x.bits_.reserve(bits.size());
  for (auto b : bits) x.bits_.push_back(b != 0 ? 1 : 0);
  x.selected_ = static_cast<std::size_t>(std::count(x.bits_.begin(), x.bits_.end(), 1));
  x.relabel(g);
  return x;
}

EdgeSubset EdgeSubset::from_string(const Graph& g, std::string_view bits) {
  std::vector<std::uint8_t> raw;
  raw.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error(ErrorCode::ParseError, "bit string may only contain 0 and 1");
    raw.push_back(c == '1' ? 1 : 0);
  }
  return from_bits(g, raw);
}

EdgeSubset EdgeSubset::from_edges(const Graph& g, std::span<const std::size_t> selected) {
  std::vector<std::uint8_t> raw(g.edge_count(), 0);
  for (auto i : selected) {
    if (i >= raw.size()) throw Error(ErrorCode::IndexOutOfRange, "edge index " + std::to_string(i));
    raw[i] = 1;
  }
  return from_bits(g, raw);
}

std::vector<std::size_t> EdgeSubset::selected_edges() const {
  std::vector<std::size_t> out;
  out.reserve(selected_);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(i);
  }
  return out;
}

std::string EdgeSubset::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

void EdgeSubset::relabel(const Graph& g) {
  const std::size_t n = g.vertex_count();
  DisjointSets dsu(n);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) dsu.unite(g.edges()[i].u, g.edges()[i].v);
  }
  label_.resize(n);
  for (std::size_t v = 0; v < n; ++v) label_[v] = static_cast<std::uint32_t>(dsu.find(v));
  components_ = dsu.set_count();
}

void EdgeSubset::toggle(const Graph& g, std::size_t i) {
  if (i >= bits_.size()) throw Error(ErrorCode::IndexOutOfRange, "edge index " + std::to_string(i));
  const Edge& e = g.edges()[i];
  if (bits_[i]) {
    bits_[i] = 0;
    --selected_;
    relabel(g);
    return;
  }
  bits_[i] = 1;
  ++selected_;
  const auto from = label_[e.v];
  const auto to = label_[e.u];
  if (from != to) {
    for (auto& l : label_) {
      if (l == from) l = to;
    }
    --components_;
  }
}

bool EdgeSubset::removal_disconnects(const Graph& g, std::size_t i, DisjointSets& scratch) const {
  if (i >= bits_.size()) throw Error(ErrorCode::IndexOutOfRange, "edge index " + std::to_string(i));
  if (!bits_[i]) return false;
  const auto edges = g.edges();
  const std::size_t target_u = edges[i].u;
  const std::size_t target_v = edges[i].v;
  scratch.reset(g.vertex_count());
  for (std::size_t j = 0; j < bits_.size(); ++j) {
    if (j == i || !bits_[j]) continue;
    scratch.unite(edges[j].u, edges[j].v);
    if (scratch.find(target_u) == scratch.find(target_v)) return false;
  }
  return true;
}

bool EdgeSubset::removal_disconnects(const Graph& g, std::size_t i) const {
  DisjointSets scratch;
  return removal_disconnects(g, i, scratch);
}

EdgeSubset flip(const Graph& g, const EdgeSubset& x, std::size_t i) {
  EdgeSubset y = x;
  y.toggle(g, i);
  return y;
}

Fitness fitness(const Graph& g, const EdgeSubset& x) {
  if (!x.connected()) return Fitness::infeasible();
  double sum = 0.0;
  const auto bits = x.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) sum += g.weight(i);
  }
  return Fitness::finite(sum);
}

std::size_t count_components(const Graph& g, std::span<const std::uint8_t> bits) {
  DisjointSets dsu(g.vertex_count());
  const auto edges = g.edges();
  for (std::size_t i = 0; i < bits.size() && i < edges.size(); ++i) {
    if (bits[i]) dsu.unite(edges[i].u, edges[i].v);
  }
  return dsu.set_count();
}

std::size_t component_count_below(const Graph& g, double threshold) {
  DisjointSets dsu(g.vertex_count());
  for (const auto& e : g.edges()) {
    if (e.w <= threshold) dsu.unite(e.u, e.v);
  }
  return dsu.set_count();
}

}  // namespace samst
