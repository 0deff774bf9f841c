#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "cfgexplore/io.hpp"
#include "cfgexplore/lln.hpp"
#include "support/generators.hpp"

using namespace cfgx;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const char* name) {
  return fs::temp_directory_path() / name;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("shortest round-trip formatting") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 12345.6789, -0.25, 0.0}) {
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.25) == "0.25");
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("trajectory CSV reloads bit for bit") {
  Rng rng(5);
  const auto model = testing::random_model(rng, 6);
  const auto path = to_path_pair(lln_path(model, 1.3, 301));
  const auto file = temp_file("cfgx_io_path.csv");
  atomic_write(file, path_to_csv(path));
  const auto back = read_path_csv(file);
  REQUIRE(back.K == path.K);
  REQUIRE(back.t.size() == path.t.size());
  for (std::size_t i = 0; i < path.t.size(); ++i) {
    CHECK(back.t[i] == path.t[i]);
    CHECK(back.psi[i] == path.psi[i]);
    CHECK(back.zeta0[i] == path.zeta0[i]);
    for (int k = 1; k <= path.K; ++k) CHECK(back.zeta[k][i] == path.zeta[k][i]);
  }
  fs::remove(file);
}

TEST_CASE("readers skip blanks and comments") {
  const auto deg = temp_file("cfgx_io_deg.txt");
  atomic_write(deg, "# a degree file\n\n3\n 3\n3\n3\n");
  const auto seq = read_degree_file(deg);
  CHECK(seq.degrees == std::vector<int>{3, 3, 3, 3});
  fs::remove(deg);

  const auto tab = temp_file("cfgx_io_tab.txt");
  atomic_write(tab, "# k p\n1 0.5\n3 0.5\n");
  const auto entries = read_pair_table(tab);
  REQUIRE(entries.size() == 2);
  CHECK(entries[1] == std::pair<int, double>{3, 0.5});
  fs::remove(tab);

  CHECK_THROWS_WITH_AS(read_degree_file(temp_file("cfgx_io_missing.txt")),
                       doctest::Contains("BadFile"), Error);
}

TEST_CASE("atomic write leaves no temp file behind") {
  const auto file = temp_file("cfgx_io_atomic.txt");
  atomic_write(file, "payload\n");
  CHECK(fs::exists(file));
  CHECK_FALSE(fs::exists(file.string() + ".tmp"));
  fs::remove(file);
}

TEST_CASE("graph and log exports") {
  Multigraph g;
  g.n = 3;
  g.degree.assign(3, 0);
  g.add_edge(2, 0);
  g.add_edge(1, 1);
  CHECK(graph_to_edge_list(g) == "1 3\n2 2\n");

  Rng rng(3);
  const auto result = eea_run(DegreeSequence{{2}}, rng);
  const std::string log = log_to_text(result.log);
  CHECK(log.find("1 wake 2 2") != std::string::npos);
  CHECK(log.find("2 pair-active 0 0") != std::string::npos);
}

}  // TEST_SUITE
