#include "cfgexplore/graph_gen.hpp"

#include <algorithm>
#include <queue>

namespace cfgx {

void Multigraph::add_edge(int u, int v) {
  if (u > v) std::swap(u, v);
  edges.push_back({u, v});
  degree[u]++;
  degree[v]++;
}

std::vector<std::pair<int, int>> Multigraph::canonical_edges() const {
  auto sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

ComponentKey component_key(const ComponentRecord& rec) {
  std::vector<std::pair<int, long long>> cfg(rec.degree_config.begin(),
                                             rec.degree_config.end());
  return {rec.edge_count, std::move(cfg)};
}

std::vector<ComponentKey> component_multiset(const std::vector<ComponentRecord>& recs) {
  std::vector<ComponentKey> keys;
  keys.reserve(recs.size());
  for (const auto& rec : recs) keys.push_back(component_key(rec));
  std::sort(keys.begin(), keys.end());
  return keys;
}

namespace {

std::vector<int> half_edge_owners(const DegreeSequence& seq) {
  std::vector<int> owner;
  owner.reserve(seq.half_edges());
  for (int v = 0; v < static_cast<int>(seq.degrees.size()); ++v)
    for (int i = 0; i < seq.degrees[v]; ++i) owner.push_back(v);
  return owner;
}

}  // namespace

Multigraph uniform_matching(const DegreeSequence& seq, Rng& rng) {
  const auto checked = DegreeSequence::from(seq.degrees);
  std::vector<int> stubs = half_edge_owners(checked);
  Multigraph g;
  g.n = static_cast<int>(checked.degrees.size());
  g.degree.assign(g.n, 0);
  g.edges.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    const std::size_t j = i + 1 + rng.below(stubs.size() - i - 1);
    std::swap(stubs[i + 1], stubs[j]);
    g.add_edge(stubs[i], stubs[i + 1]);
  }
  return g;
}

std::vector<ComponentRecord> components_of(const Multigraph& g) {
  std::vector<std::vector<int>> adj(g.n);
  for (const auto& [u, v] : g.edges) {
    if (u != v) {  // self-loops do not affect connectivity
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
  }
  std::vector<ComponentRecord> out;
  std::vector<char> seen(g.n, 0);
  for (int start = 0; start < g.n; ++start) {
    if (seen[start]) continue;
    ComponentRecord rec;
    std::queue<int> frontier;
    frontier.push(start);
    seen[start] = 1;
    long long half_edge_total = 0;
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop();
      rec.vertices.push_back(v);
      rec.degree_config[g.degree[v]]++;
      half_edge_total += g.degree[v];
      for (int w : adj[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          frontier.push(w);
        }
      }
    }
    rec.edge_count = half_edge_total / 2;
    std::sort(rec.vertices.begin(), rec.vertices.end());
    out.push_back(std::move(rec));
  }
  return out;
}

double matching_count(long long m) {
  double acc = 1;
  for (long long i = 2 * m - 1; i >= 1; i -= 2) acc *= static_cast<double>(i);
  return acc;
}

namespace {

bool enumerate_rec(const std::vector<int>& owner, std::vector<char>& used,
                   Multigraph& partial,
                   const std::function<bool(const Multigraph&)>& visit) {
  std::size_t first = 0;
  while (first < used.size() && used[first]) ++first;
  if (first == used.size()) return visit(partial);
  used[first] = 1;
  for (std::size_t j = first + 1; j < used.size(); ++j) {
    if (used[j]) continue;
    used[j] = 1;
    partial.add_edge(owner[first], owner[j]);
    const bool keep_going = enumerate_rec(owner, used, partial, visit);
    const auto [u, v] = partial.edges.back();
    partial.edges.pop_back();
    partial.degree[u]--;
    partial.degree[v]--;
    used[j] = 0;
    if (!keep_going) {
      used[first] = 0;
      return false;
    }
  }
  used[first] = 0;
  return true;
}

}  // namespace

void for_each_matching(const DegreeSequence& seq,
                       const std::function<bool(const Multigraph&)>& visit,
                       int limit) {
  const auto checked = DegreeSequence::from(seq.degrees);
  const long long two_m = checked.half_edges();
  if (two_m > limit)
    fail(ErrorCode::TooLarge, "enumeration over " + std::to_string(two_m) +
                                  " half-edges exceeds the limit of " +
                                  std::to_string(limit));
  const std::vector<int> owner = half_edge_owners(checked);
  std::vector<char> used(owner.size(), 0);
  Multigraph partial;
  partial.n = static_cast<int>(checked.degrees.size());
  partial.degree.assign(partial.n, 0);
  enumerate_rec(owner, used, partial, visit);
}

std::vector<Multigraph> enumerate_matchings(const DegreeSequence& seq, int limit) {
  std::vector<Multigraph> out;
  for_each_matching(
      seq,
      [&](const Multigraph& g) {
        out.push_back(g);
        return true;
      },
      limit);
  return out;
}

}  // namespace cfgx
