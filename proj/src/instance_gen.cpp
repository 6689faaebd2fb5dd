#include "samst/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <utility>

#include "samst/error.hpp"
#include "samst/instance_io.hpp"
#include "samst/rng.hpp"

namespace samst {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Uniform: return "uniform";
    case Family::Separated: return "separated";
    case Family::TreePlus: return "tree-plus";
    case Family::Complete: return "complete";
  }
  return "uniform";
}

std::optional<Family> parse_family(std::string_view name) {
  for (auto f : {Family::Uniform, Family::Separated, Family::TreePlus, Family::Complete}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

std::vector<Edge> pruefer_decode(std::span<const std::uint32_t> code, std::size_t n) {
  std::vector<std::size_t> degree(n, 1);
  for (auto c : code) ++degree[c];
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> leaves;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (degree[v] == 1) leaves.push(v);
  }
  std::vector<Edge> out;
  out.reserve(n - 1);
  for (auto c : code) {
    const auto leaf = leaves.top();
    leaves.pop();
    out.push_back({std::min(leaf, c), std::max(leaf, c), 0.0});
    if (--degree[c] == 1) leaves.push(c);
  }
  const auto a = leaves.top();
  leaves.pop();
  const auto b = leaves.top();
  out.push_back({std::min(a, b), std::max(a, b), 0.0});
  return out;
}

namespace {

void validate(const GenSpec& spec, std::size_t m) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InfeasibleSpec, msg); };
  if (spec.n < 2) fail("n must be at least 2");
  if (spec.n > 100000) fail("n too large");
  const std::size_t max_m = spec.n * (spec.n - 1) / 2;
  if (m + 1 < spec.n || m > max_m) {
    fail("m must lie in [n-1, n(n-1)/2] = [" + std::to_string(spec.n - 1) + ", " + std::to_string(max_m) + "]");
  }
  if (!(spec.w_lo > 0.0) || !(spec.w_hi >= spec.w_lo) || !std::isfinite(spec.w_hi)) {
    fail("weights need 0 < w_lo <= w_hi < inf");
  }
  if (spec.family == Family::Separated) {
    if (!(spec.eps > 0.0)) fail("separated family needs eps > 0");
    if (spec.levels == 0) fail("separated family needs at least one level");
  }
}

}  // namespace

Graph generate(const GenSpec& spec) {
  const std::size_t m = spec.family == Family::Complete ? spec.n * (spec.n - 1) / 2 : spec.m;
  validate(spec, m);
  const std::size_t n = spec.n;
  Rng rng(mix_seed(spec.seed));

  std::vector<Edge> edges;
  edges.reserve(m);
  std::size_t tree_edges = 0;
  if (spec.family == Family::Complete) {
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t v = u + 1; v < n; ++v) edges.push_back({u, v, 0.0});
    }
  } else {
    std::vector<std::uint32_t> code(n >= 2 ? n - 2 : 0);
    for (auto& c : code) c = static_cast<std::uint32_t>(rng.uniform_index(n));
    edges = pruefer_decode(code, n);
    tree_edges = edges.size();

    const std::size_t extra = m - (n - 1);
    if (extra > 0) {
      std::set<std::pair<std::uint32_t, std::uint32_t>> in_tree;
      for (const auto& e : edges) in_tree.emplace(e.u, e.v);
      std::vector<std::pair<std::uint32_t, std::uint32_t>> pool;
      pool.reserve(n * (n - 1) / 2 - tree_edges);
      for (std::uint32_t u = 0; u < n; ++u) {
        for (std::uint32_t v = u + 1; v < n; ++v) {
          if (!in_tree.count({u, v})) pool.emplace_back(u, v);
        }
      }
      for (std::size_t k = 0; k < extra; ++k) {
        const auto j = k + static_cast<std::size_t>(rng.uniform_index(pool.size() - k));
        std::swap(pool[k], pool[j]);
        edges.push_back({pool[k].first, pool[k].second, 0.0});
      }
    }
  }

  std::vector<double> levels;
  if (spec.family == Family::Separated) {
    levels.push_back(spec.w_lo);
    for (std::size_t k = 1; k < spec.levels; ++k) levels.push_back(levels.back() * (1.0 + spec.eps));
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    switch (spec.family) {
      case Family::Separated:
        edges[i].w = levels[rng.uniform_index(levels.size())];
        break;
      case Family::TreePlus:
        edges[i].w = i < tree_edges ? spec.w_lo : spec.w_lo + (spec.w_hi - spec.w_lo) * rng.uniform01();
        break;
      case Family::Uniform:
      case Family::Complete:
        edges[i].w = spec.w_lo + (spec.w_hi - spec.w_lo) * rng.uniform01();
        break;
    }
  }

  for (std::size_t k = edges.size(); k > 1; --k) {
    const auto j = static_cast<std::size_t>(rng.uniform_index(k));
    std::swap(edges[k - 1], edges[j]);
  }
  return Graph::build(n, std::move(edges));
}

std::vector<std::string> describe(const GenSpec& spec) {
  std::vector<std::string> lines;
  lines.push_back("generated family=" + std::string(to_string(spec.family)));
  lines.push_back("n=" + std::to_string(spec.n) + " m=" + std::to_string(spec.m) + " seed=" + std::to_string(spec.seed));
  lines.push_back("w_lo=" + format_double(spec.w_lo) + " w_hi=" + format_double(spec.w_hi) +
                  " eps=" + format_double(spec.eps) + " levels=" + std::to_string(spec.levels));
  return lines;
}

bool check_separated(const Graph& g, double eps) {
  std::vector<double> w;
  w.reserve(g.edge_count());
  for (const auto& e : g.edges()) w.push_back(e.w);
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  for (std::size_t k = 1; k < w.size(); ++k) {
    if (w[k] < (1.0 + eps) * w[k - 1]) return false;
  }
  return true;
}

}  // namespace samst
