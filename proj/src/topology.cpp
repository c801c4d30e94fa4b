#include "fedcarbon/topology.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "fedcarbon/rng.hpp"

namespace fedcarbon {

Topology::Topology(int nodes, TopologyKind kind, std::vector<std::pair<int, int>> edges)
    : node_count_(nodes), kind_(kind), edges_(std::move(edges)) {
  if (nodes < 0) throw std::invalid_argument("topology: node count must be >= 0");
  for (auto& [a, b] : edges_) {
    if (a == b) throw std::invalid_argument("topology: self-loops are not allowed");
    if (a < 0 || b < 0 || a >= nodes || b >= nodes)
      throw std::invalid_argument("topology: edge endpoint out of range");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  adjacency_.assign(static_cast<size_t>(nodes), {});
  for (const auto& [a, b] : edges_) {
    adjacency_[static_cast<size_t>(a)].push_back(b);
    adjacency_[static_cast<size_t>(b)].push_back(a);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

Topology Topology::star(int nodes) {
  std::vector<std::pair<int, int>> edges;
  for (int k = 1; k < nodes; ++k) edges.emplace_back(0, k);
  return Topology(nodes, TopologyKind::Star, std::move(edges));
}

Topology Topology::full_mesh(int nodes) {
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < nodes; ++a)
    for (int b = a + 1; b < nodes; ++b) edges.emplace_back(a, b);
  return Topology(nodes, TopologyKind::FullMesh, std::move(edges));
}

Topology Topology::ring(int nodes) {
  std::vector<std::pair<int, int>> edges;
  if (nodes == 2) {
    edges.emplace_back(0, 1);
  } else if (nodes > 2) {
    for (int k = 0; k < nodes; ++k) edges.emplace_back(k, (k + 1) % nodes);
  }
  return Topology(nodes, TopologyKind::Ring, std::move(edges));
}

Topology Topology::custom(int nodes, std::vector<std::pair<int, int>> edges) {
  return Topology(nodes, TopologyKind::Custom, std::move(edges));
}

ActiveSchedule round_robin_schedule(int total, int active, int rounds) {
  if (total < 1) throw std::invalid_argument("round_robin_schedule: total must be >= 1");
  if (active < 1 || active > total)
    throw std::invalid_argument("round_robin_schedule: active must satisfy 1 <= active <= total");
  if (rounds < 1) throw std::invalid_argument("round_robin_schedule: rounds must be >= 1");

  ActiveSchedule schedule;
  schedule.total_devices = total;
  schedule.active_per_round = active;
  schedule.rounds.reserve(static_cast<size_t>(rounds));
  for (int t = 0; t < rounds; ++t) {
    std::vector<int> set(static_cast<size_t>(active));
    const long long base = static_cast<long long>(t) * active;
    for (int i = 0; i < active; ++i)
      set[static_cast<size_t>(i)] = static_cast<int>((base + i) % total);
    std::sort(set.begin(), set.end());
    schedule.rounds.push_back(std::move(set));
  }
  return schedule;
}

std::vector<int> select_neighbors(const Topology& topology, int node, int round,
                                  int want, std::uint64_t seed) {
  if (node < 0 || node >= topology.node_count())
    throw std::invalid_argument("select_neighbors: node out of range");
  if (want < 1) throw std::invalid_argument("select_neighbors: want must be >= 1");
  std::vector<int> pool = topology.neighbors(node);  // sorted copy
  if (pool.empty())
    throw std::runtime_error("select_neighbors: node " + std::to_string(node) +
                             " has no neighbors");
  const int take = std::min<int>(want, static_cast<int>(pool.size()));
  CounterRng rng(seed, static_cast<std::uint64_t>(node),
                 static_cast<std::uint64_t>(round));
  // Partial Fisher-Yates over the sorted pool.
  for (int i = 0; i < take; ++i) {
    const auto j = i + static_cast<int>(rng.next_below(pool.size() - static_cast<size_t>(i)));
    std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
  }
  pool.resize(static_cast<size_t>(take));
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<std::vector<int>> connected_components(const Topology& topology) {
  const int n = topology.node_count();
  std::vector<bool> seen(static_cast<size_t>(n), false);
  std::vector<std::vector<int>> components;
  for (int start = 0; start < n; ++start) {
    if (seen[static_cast<size_t>(start)]) continue;
    std::vector<int> component;
    std::queue<int> frontier;
    frontier.push(start);
    seen[static_cast<size_t>(start)] = true;
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop();
      component.push_back(v);
      for (int w : topology.neighbors(v)) {
        if (!seen[static_cast<size_t>(w)]) {
          seen[static_cast<size_t>(w)] = true;
          frontier.push(w);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  return components;
}

void validate_topology(const Topology& topology, Scheme scheme) {
  if (scheme != Scheme::CFL) return;  // UL/DL star to the center is implicit
  if (topology.node_count() < 2)
    throw std::invalid_argument("cfl topology: need at least 2 devices");
  const auto components = connected_components(topology);
  if (components.size() <= 1) return;

  std::ostringstream os;
  os << "cfl topology is disconnected into " << components.size() << " components:";
  for (const auto& component : components) {
    os << " {";
    for (size_t i = 0; i < component.size() && i < 8; ++i)
      os << (i ? "," : "") << component[i];
    if (component.size() > 8) os << ",...";
    os << "}";
  }
  throw std::invalid_argument(os.str());
}

}  // namespace fedcarbon
