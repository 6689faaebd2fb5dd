#include <doctest.h>

#include <sstream>
#include <string>

#include "samst/instance_io.hpp"
#include "test_support.hpp"

using namespace samst;

namespace {
Graph parse(const std::string& text) {
  std::istringstream in(text);
  return read_instance(in);
}
}  // namespace

TEST_CASE("instance round trip") {
  const auto g = build_graph(4, {{0, 1, 0.1}, {1, 2, 1e-7}, {2, 3, 123456.789}, {3, 0, 2.0 / 3.0}});
  std::ostringstream out;
  const std::vector<std::string> comments{"family uniform", "seed 3"};
  write_instance(out, g, comments);
  const auto text = out.str();
  CHECK(text.rfind("c family uniform\nc seed 3\np mst 4 4\n", 0) == 0);
  const auto h = parse(text);
  REQUIRE(h.edge_count() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(h.edge(i).u == g.edge(i).u);
    CHECK(h.edge(i).v == g.edge(i).v);
    CHECK(h.weight(i) == g.weight(i));
  }
  std::ostringstream again;
  write_instance(again, h, comments);
  CHECK(again.str() == text);
}

TEST_CASE("instance parser accepts comments anywhere") {
  const auto g = parse("c hello\n\np mst 3 2\nc mid\ne 0 1 1.5\ne 1 2 2\n");
  CHECK(g.edge_count() == 2);
  CHECK(g.total_weight() == 3.5);
}

TEST_CASE("instance parser rejects malformed input") {
  CHECK_ERROR_CODE(parse("p mst 2 1\np mst 2 1\ne 0 1 1\n"), ErrorCode::ParseError);
  CHECK_ERROR_CODE(parse("p mst 2 1\ne 0 1 0\n"), ErrorCode::NonPositiveWeight);
  CHECK_ERROR_CODE(parse("p mst 2 1\ne 0 1 -3\n"), ErrorCode::NonPositiveWeight);
  CHECK_ERROR_CODE(parse("e 0 1 1\np mst 2 1\n"), ErrorCode::ParseError);
  CHECK_ERROR_CODE(parse("p mst 2 2\ne 0 1 1\n"), ErrorCode::ParseError);
  CHECK_ERROR_CODE(parse("p mst 2 1\ne 0 1 abc\n"), ErrorCode::ParseError);
  CHECK_ERROR_CODE(parse("p mst 2 1\nx 0 1 1\n"), ErrorCode::ParseError);
  CHECK_ERROR_CODE(parse("c only comments\n"), ErrorCode::ParseError);
  CHECK_ERROR_CODE(parse("p mst 3 1\ne 0 1 1\n"), ErrorCode::DisconnectedInput);
  CHECK_ERROR_CODE(parse("p mst 2 1\ne 0 5 1\n"), ErrorCode::BadVertexIndex);
  CHECK_ERROR_CODE(read_instance_file("/nonexistent/instance.txt"), ErrorCode::ParseError);
}

TEST_CASE("format_double is shortest round trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(3.0) == "3");
  const double x = 2.0 / 3.0;
  CHECK(std::stod(format_double(x)) == x);
}
