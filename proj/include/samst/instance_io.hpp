#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "samst/graph.hpp"

namespace samst {

// Line-oriented text format:
//   c <comment>
//   p mst <n> <m>
//   e <u> <v> <w>      (exactly m lines, 0-based vertex ids)

Graph read_instance(std::istream& in);
Graph read_instance_file(const std::filesystem::path& path);

void write_instance(std::ostream& out, const Graph& g, std::span<const std::string> comments = {});

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

}  // namespace samst
