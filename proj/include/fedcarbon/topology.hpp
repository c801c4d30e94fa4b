#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fedcarbon/common.hpp"

namespace fedcarbon {

enum class TopologyKind { Star, FullMesh, Ring, Custom };

// Undirected connectivity graph over device ids 0..node_count-1. Edges are
// stored normalized (a < b) and deduplicated; self-loops are rejected.
class Topology {
 public:
  static Topology star(int nodes);       // node 0 is the hub
  static Topology full_mesh(int nodes);
  static Topology ring(int nodes);
  static Topology custom(int nodes, std::vector<std::pair<int, int>> edges);

  int node_count() const { return node_count_; }
  TopologyKind kind() const { return kind_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int node) const { return adjacency_.at(node); }
  int degree(int node) const { return static_cast<int>(neighbors(node).size()); }

 private:
  Topology(int nodes, TopologyKind kind, std::vector<std::pair<int, int>> edges);

  int node_count_ = 0;
  TopologyKind kind_ = TopologyKind::FullMesh;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adjacency_;  // sorted per node
};

// Active-device sets per round, all of the same size.
struct ActiveSchedule {
  int total_devices = 0;
  int active_per_round = 0;
  std::vector<std::vector<int>> rounds;  // each sorted ascending
};

// Deterministic rotation: round t (0-based) activates
// {(t*active + i) mod total : i = 0..active-1}. Over ceil(total/active)
// consecutive rounds every device appears at least once and at most twice.
ActiveSchedule round_robin_schedule(int total, int active, int rounds);

// min(want, degree) distinct neighbors of `node`, drawn uniformly without
// replacement. The draw is keyed on (seed, node, round) with a counter-based
// generator, so it is repeatable and independent of call order and thread
// count. Throws if the node is isolated.
std::vector<int> select_neighbors(const Topology& topology, int node, int round,
                                  int want, std::uint64_t seed);

// Connected components as sorted id lists, sorted by smallest member.
std::vector<std::vector<int>> connected_components(const Topology& topology);

// Scheme feasibility. CL/FL only need the implicit uplink/downlink star to
// the center, which exists regardless of the device graph; CFL needs at
// least two devices and a connected device graph. Throws std::invalid_argument
// listing the components when a CFL graph is disconnected.
void validate_topology(const Topology& topology, Scheme scheme);

}  // namespace fedcarbon
