#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "cfgexplore/ctmc.hpp"
#include "cfgexplore/degree_model.hpp"
#include "cfgexplore/eea.hpp"
#include "cfgexplore/rate_fn.hpp"

namespace cfgx {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double x);

// Writes via a temporary file in the same directory plus rename, so
// readers never observe a partial file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

// Degree-sequence file: one positive integer per line. Blank lines and
// lines starting with '#' are ignored.
DegreeSequence read_degree_file(const std::filesystem::path& path);

// Probability table / target files: records "k value" per line, same
// comment rules.
std::vector<std::pair<int, double>> read_pair_table(const std::filesystem::path& path);

// Edge list "u v" per line, 1-based vertex ids.
std::string graph_to_edge_list(const Multigraph& g);

// Step log: "j type k A_after" per line.
std::string log_to_text(const ExcursionLog& log);

// Trajectory CSV with header "t,psi,zeta_0,zeta_1,...,zeta_K".
std::string path_to_csv(const PathPair& path);
PathPair read_path_csv(const std::filesystem::path& path);

// Jump records "t k x0 r", thinned to every `stride`-th jump.
std::string ct_path_to_text(const CTPath& path, long long stride);

}  // namespace cfgx
