#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "cfgexplore/degree_model.hpp"
#include "cfgexplore/rng.hpp"

namespace cfgx {

// Multigraph over vertices 0..n-1. Self-loops and parallel edges allowed;
// a self-loop counts once as an edge and adds 2 to its vertex degree.
struct Multigraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // unordered pairs, stored (min,max)
  std::vector<int> degree;

  void add_edge(int u, int v);
  // Sorted edge multiset; two graphs are equal as labelled multigraphs
  // iff their canonical edge lists match.
  std::vector<std::pair<int, int>> canonical_edges() const;
};

// One connected component: vertex ids, edge count, and the per-degree
// vertex tally n̄_k keyed by the original degree of each vertex.
struct ComponentRecord {
  std::vector<int> vertices;  // sorted ascending
  long long edge_count = 0;
  std::map<int, long long> degree_config;
};

// Key used for multiset comparisons of component structure.
using ComponentKey = std::pair<long long, std::vector<std::pair<int, long long>>>;
ComponentKey component_key(const ComponentRecord& rec);
std::vector<ComponentKey> component_multiset(const std::vector<ComponentRecord>& recs);

// Uniform random pairing of the 2m half-edges: position i is paired with a
// uniform choice from the remaining suffix, which is exactly uniform over
// the (2m-1)!! perfect matchings.
Multigraph uniform_matching(const DegreeSequence& seq, Rng& rng);

// Connected components by breadth-first traversal, ordered by smallest
// vertex id. Used as the structural oracle for exploration runs.
std::vector<ComponentRecord> components_of(const Multigraph& g);

// Number of perfect matchings of 2m half-edges: (2m-1)!!.
double matching_count(long long m);

// Visits every perfect matching exactly once. The visitor may return false
// to stop early. Throws TooLarge when 2m exceeds limit half-edges.
void for_each_matching(const DegreeSequence& seq,
                       const std::function<bool(const Multigraph&)>& visit,
                       int limit = 14);

std::vector<Multigraph> enumerate_matchings(const DegreeSequence& seq, int limit = 14);

}  // namespace cfgx
