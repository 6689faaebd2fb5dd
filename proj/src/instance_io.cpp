#include "samst/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "samst/error.hpp"

namespace samst {
namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + msg);
}

template <typename T>
T parse_number(std::string_view token, std::size_t line_no) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    parse_fail(line_no, "malformed number '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

Graph read_instance(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split(line);
    if (tokens.empty() || tokens[0] == "c") continue;
    if (tokens[0] == "p") {
      if (have_header) parse_fail(line_no, "duplicate header");
      if (tokens.size() != 4 || tokens[1] != "mst") parse_fail(line_no, "expected 'p mst <n> <m>'");
      n = parse_number<std::size_t>(tokens[2], line_no);
      m = parse_number<std::size_t>(tokens[3], line_no);
      have_header = true;
      edges.reserve(m);
    } else if (tokens[0] == "e") {
      if (!have_header) parse_fail(line_no, "edge line before header");
      if (tokens.size() != 4) parse_fail(line_no, "expected 'e <u> <v> <w>'");
      if (edges.size() == m) parse_fail(line_no, "more edge lines than declared");
      Edge e;
      e.u = parse_number<std::uint32_t>(tokens[1], line_no);
      e.v = parse_number<std::uint32_t>(tokens[2], line_no);
      e.w = parse_number<double>(tokens[3], line_no);
      if (!(e.w > 0.0)) {
        throw Error(ErrorCode::NonPositiveWeight, "line " + std::to_string(line_no) + ": weight must be positive");
      }
      edges.push_back(e);
    } else {
      parse_fail(line_no, "unknown line type '" + std::string(tokens[0]) + "'");
    }
  }
  if (!have_header) throw Error(ErrorCode::ParseError, "missing 'p mst' header");
  if (edges.size() != m) {
    throw Error(ErrorCode::ParseError, "declared " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  }
  return Graph::build(n, std::move(edges));
}

Graph read_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  return read_instance(in);
}

void write_instance(std::ostream& out, const Graph& g, std::span<const std::string> comments) {
  for (const auto& c : comments) out << "c " << c << '\n';
  out << "p mst " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) {
    out << "e " << e.u << ' ' << e.v << ' ' << format_double(e.w) << '\n';
  }
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) return std::to_string(x);
  return std::string(buf, ptr);
}

}  // namespace samst
