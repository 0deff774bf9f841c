#include <doctest.h>

#include <cmath>
#include <map>

#include "cfgexplore/graph_gen.hpp"
#include "support/generators.hpp"

using namespace cfgx;

TEST_SUITE("graph_gen") {

TEST_CASE("forced matchings") {
  Rng rng(1);
  const auto pair = uniform_matching(DegreeSequence{{1, 1}}, rng);
  REQUIRE(pair.edges.size() == 1);
  CHECK(pair.edges[0] == std::pair<int, int>{0, 1});

  const auto loop = uniform_matching(DegreeSequence{{2}}, rng);
  REQUIRE(loop.edges.size() == 1);
  CHECK(loop.edges[0] == std::pair<int, int>{0, 0});
  CHECK(loop.degree[0] == 2);
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_matchings(DegreeSequence{{1, 1}}).size() == 1);
  CHECK(enumerate_matchings(DegreeSequence{{1, 1, 1, 1}}).size() == 3);
  CHECK(enumerate_matchings(DegreeSequence{{2, 2, 2}}).size() == 15);
  CHECK(matching_count(3) == doctest::Approx(15.0));
  CHECK(matching_count(7) == doctest::Approx(135135.0));
  CHECK_THROWS_WITH_AS(enumerate_matchings(DegreeSequence{{8, 8}}, 14),
                       doctest::Contains("TooLarge"), Error);
}

TEST_CASE("matching frequencies are uniform") {
  const DegreeSequence seq{{1, 1, 1, 1}};
  std::map<std::vector<std::pair<int, int>>, long long> freq;
  const long long draws = 100000;
  Rng rng(2024);
  for (long long i = 0; i < draws; ++i) {
    freq[uniform_matching(seq, rng).canonical_edges()]++;
  }
  REQUIRE(freq.size() == 3);
  const double p = 1.0 / 3.0;
  const double sigma = std::sqrt(p * (1 - p) * draws);
  for (const auto& [edges, count] : freq)
    CHECK(std::abs(count - draws * p) <= 4.0 * sigma);
}

TEST_CASE("component extraction") {
  Multigraph two_edges;
  two_edges.n = 4;
  two_edges.degree.assign(4, 0);
  two_edges.add_edge(0, 2);
  two_edges.add_edge(1, 3);
  const auto comps = components_of(two_edges);
  REQUIRE(comps.size() == 2);
  for (const auto& c : comps) {
    CHECK(c.edge_count == 1);
    CHECK(c.degree_config.at(1) == 2);
  }
  CHECK(comps[0].vertices == std::vector<int>{0, 2});  // smallest-id order

  Multigraph loop;
  loop.n = 1;
  loop.degree.assign(1, 0);
  loop.add_edge(0, 0);
  const auto loop_comps = components_of(loop);
  REQUIRE(loop_comps.size() == 1);
  CHECK(loop_comps[0].edge_count == 1);
  CHECK(loop_comps[0].degree_config.at(2) == 1);

  Multigraph k4;
  k4.n = 4;
  k4.degree.assign(4, 0);
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) k4.add_edge(u, v);
  const auto k4_comps = components_of(k4);
  REQUIRE(k4_comps.size() == 1);
  CHECK(k4_comps[0].edge_count == 6);
  CHECK(k4_comps[0].degree_config.at(3) == 4);
}

TEST_CASE("component tallies close the half-edge accounting") {
  Rng rng(7);
  for (int rep = 0; rep < 200; ++rep) {
    const auto seq = testing::random_sequence(rng, 120, 8);
    const auto g = uniform_matching(seq, rng);
    CHECK(static_cast<long long>(g.edges.size()) == seq.edge_count());
    for (std::size_t v = 0; v < seq.degrees.size(); ++v)
      CHECK(g.degree[v] == seq.degrees[v]);
    const auto comps = components_of(g);
    long long edge_total = 0;
    std::map<int, long long> tally;
    for (const auto& c : comps) {
      edge_total += c.edge_count;
      long long half_edges = 0;
      for (const auto& [k, cnt] : c.degree_config) {
        tally[k] += cnt;
        half_edges += static_cast<long long>(k) * cnt;
      }
      CHECK(half_edges == 2 * c.edge_count);
      long long vertex_count = 0;
      for (const auto& [k, cnt] : c.degree_config) vertex_count += cnt;
      CHECK(vertex_count == static_cast<long long>(c.vertices.size()));
    }
    CHECK(edge_total == seq.edge_count());
    std::map<int, long long> expected;
    for (int d : seq.degrees) expected[d]++;
    CHECK(tally == expected);
  }
}

TEST_CASE("early-stop enumeration") {
  int seen = 0;
  for_each_matching(DegreeSequence{{2, 2, 2}}, [&](const Multigraph&) {
    return ++seen < 4;
  });
  CHECK(seen == 4);
}

}  // TEST_SUITE
