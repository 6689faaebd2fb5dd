#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "samst/graph.hpp"
#include "test_support.hpp"

using namespace samst;

TEST_CASE("graph construction") {
  const auto single = build_graph(2, {{0, 1, 5.0}});
  CHECK(single.edge_count() == 1);
  CHECK(single.w_min() == 5.0);
  CHECK(single.w_max() == 5.0);

  const auto g = triangle();
  CHECK(g.edge_count() == 3);
  CHECK(g.w_min() == 1.0);
  CHECK(g.w_max() == 3.0);
  CHECK(g.total_weight() == 6.0);

  CHECK_ERROR_CODE(build_graph(3, {{0, 1, 1.0}}), ErrorCode::DisconnectedInput);
  CHECK_ERROR_CODE(build_graph(2, {{0, 1, 0.0}}), ErrorCode::NonPositiveWeight);
  CHECK_ERROR_CODE(build_graph(2, {{0, 1, -2.0}}), ErrorCode::NonPositiveWeight);
  CHECK_ERROR_CODE(build_graph(2, {{0, 2, 1.0}}), ErrorCode::BadVertexIndex);
  CHECK_ERROR_CODE(build_graph(2, {{0, 0, 1.0}, {0, 1, 1.0}}), ErrorCode::BadVertexIndex);
}

TEST_CASE("parallel edges are allowed") {
  const auto g = build_graph(2, {{0, 1, 1.0}, {1, 0, 2.0}});
  CHECK(g.edge_count() == 2);
  auto x = EdgeSubset::all_ones(g);
  CHECK_FALSE(x.removal_disconnects(g, 0));
  x.toggle(g, 0);
  CHECK(x.removal_disconnects(g, 1));
}

TEST_CASE("fitness on the triangle") {
  const auto g = triangle();
  CHECK(fitness(g, EdgeSubset::from_string(g, "111")) == Fitness::finite(6.0));
  CHECK(fitness(g, EdgeSubset::from_string(g, "110")) == Fitness::finite(3.0));
  CHECK_FALSE(fitness(g, EdgeSubset::from_string(g, "100")).is_finite());
  CHECK(Fitness::finite(1e300) < Fitness::infeasible());
  CHECK_ERROR_CODE(Fitness::infeasible().value(), ErrorCode::DomainError);
}

TEST_CASE("flip on the triangle") {
  const auto g = triangle();
  const auto full = EdgeSubset::from_string(g, "111");
  auto y = flip(g, full, 2);
  CHECK(y.to_string() == "110");
  CHECK(y.component_count() == 1);
  CHECK(full.to_string() == "111");

  CHECK(flip(g, y, 2).to_string() == "111");
  const auto z = flip(g, y, 0);
  CHECK(z.to_string() == "010");
  CHECK(z.component_count() == 2);
  CHECK_ERROR_CODE(flip(g, full, 3), ErrorCode::IndexOutOfRange);
}

TEST_CASE("component_count_below") {
  const auto g = triangle();
  CHECK(component_count_below(g, 1.5) == 2);
  CHECK(component_count_below(g, 3.0) == 1);
  CHECK(component_count_below(g, 0.5) == 3);
}

TEST_CASE("flip involution and connectivity cross-check on random triples") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + gen() % 7;
    const std::size_t max_m = n * (n - 1) / 2;
    const std::size_t m = n - 1 + gen() % (max_m - n + 2);
    const auto edges = oracle::random_connected(gen, n, m, false);
    const auto g = build_graph(n, edges);

    std::vector<std::uint8_t> bits(m);
    for (auto& b : bits) b = static_cast<std::uint8_t>(gen() & 1);
    const auto x = EdgeSubset::from_bits(g, bits);
    REQUIRE(x.component_count() == oracle::components(n, edges, bits));
    CHECK(fitness(g, x).is_finite() == (oracle::components(n, edges, bits) == 1));

    const std::size_t i = gen() % m;
    const auto y = flip(g, x, i);
    auto ybits = bits;
    ybits[i] ^= 1;
    CHECK(y.component_count() == oracle::components(n, edges, ybits));
    CHECK(y.component_count() == count_components(g, y.bits()));
    if (ybits[i]) {
      CHECK(y.component_count() <= x.component_count());
    } else {
      CHECK(y.component_count() <= x.component_count() + 1);
      CHECK(x.removal_disconnects(g, i) == (y.component_count() > x.component_count()));
    }
    const auto back = flip(g, y, i);
    CHECK(back == x);
    CHECK(back.component_count() == x.component_count());
  }
}

TEST_CASE("component_count_below is monotone with the right endpoints") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + gen() % 6;
    const auto edges = oracle::random_connected(gen, n, std::min(n + 1, n * (n - 1) / 2), false);
    const auto g = build_graph(n, edges);
    CHECK(component_count_below(g, g.w_min() * 0.999) == n);
    CHECK(component_count_below(g, g.w_max()) == 1);
    std::size_t prev = n;
    for (double t = 0.0; t <= 21.0; t += 0.25) {
      const auto c = component_count_below(g, t);
      CHECK(c <= prev);
      prev = c;
    }
  }
}

TEST_CASE("EdgeSubset constructors") {
  const auto g = triangle();
  CHECK(EdgeSubset::none(g).component_count() == 3);
  const std::vector<std::size_t> sel{1, 2};
  CHECK(EdgeSubset::from_edges(g, sel).to_string() == "011");
  CHECK(EdgeSubset::all_ones(g).selected_count() == 3);
  CHECK_THROWS(EdgeSubset::from_string(g, "1x1"));
  CHECK_THROWS(EdgeSubset::from_string(g, "11"));
}
