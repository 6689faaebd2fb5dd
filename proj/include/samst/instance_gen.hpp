#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "samst/graph.hpp"

namespace samst {

enum class Family {
  Uniform,    ///< random tree plus extra edges, weights uniform in [w_lo, w_hi]
  Separated,  ///< weights w_lo * (1+eps)^k, k uniform in [0, levels)
  TreePlus,   ///< planted MST: tree edges weigh w_lo, extras uniform in [w_lo, w_hi]
  Complete,   ///< K_n with uniform weights
};

std::string_view to_string(Family f);
/// Accepts "uniform", "separated", "tree-plus", "complete".
std::optional<Family> parse_family(std::string_view name);

struct GenSpec {
  Family family = Family::Uniform;
  std::size_t n = 2;
  /// Ignored for Complete (always n(n-1)/2).
  std::size_t m = 1;
  double eps = 1.0;
  double w_lo = 1.0;
  double w_hi = 100.0;
  std::size_t levels = 8;
  std::uint64_t seed = 0;
};

/// Seeded instance: uniform random spanning tree (Pruefer sequence) plus
/// m-(n-1) distinct extra vertex pairs, edge order shuffled. Throws
/// Error(InfeasibleSpec) when sizes or weight parameters are out of range.
Graph generate(const GenSpec& spec);

/// Comment lines echoing the generator settings, written into instance files.
std::vector<std::string> describe(const GenSpec& spec);

/// True iff any two distinct weights differ by a factor of at least 1+eps.
bool check_separated(const Graph& g, double eps);

/// Decodes a Pruefer sequence over vertices [0, n) into n-1 tree edges.
std::vector<Edge> pruefer_decode(std::span<const std::uint32_t> code, std::size_t n);

}  // namespace samst
