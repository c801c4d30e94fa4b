#pragma once

// Test-side oracle: expands a scheme configuration into its individual
// transmission and compute actions, round by round under the round-robin
// schedule, and sums their energies one at a time with primitive
// arithmetic. Deliberately independent of the closed forms and of the
// production event biller so it can arbitrate both.

#include <map>
#include <tuple>
#include <vector>

#include "fedcarbon/energy.hpp"
#include "fedcarbon/topology.hpp"

namespace oracle {

struct Accumulated {
  double compute_device = 0.0;
  double compute_center = 0.0;
  double up = 0.0;
  double down = 0.0;
  double mesh = 0.0;
  // (role: 0 center / 1 device, node, kind as int) -> joules
  std::map<std::tuple<int, int, int>, double> ledger;
  std::vector<double> active_rounds;  // realized schedule counts per device
  std::vector<double> mesh_sends;

  double total() const { return compute_device + compute_center + up + down + mesh; }
};

inline Accumulated accumulate(fedcarbon::Scheme scheme, long long rounds,
                              const fedcarbon::FleetSpec& fleet,
                              const fedcarbon::LinkEfficiencies& links,
                              bool dl_broadcast = false) {
  using fedcarbon::CostKind;
  const int K = fleet.total_devices;
  const int Ka = fleet.active_per_round;
  const int N = fleet.neighbors_per_round;

  const double gamma = fleet.center_profile.pue;
  const double e_center = fleet.center_profile.power_w * fleet.center_profile.batch_time_s *
                          fleet.center_profile.batches_per_round;
  double e_device;
  if (fleet.device_energy_source == fedcarbon::DeviceEnergySource::Ratio)
    e_device = fleet.compute_ratio * e_center;
  else
    e_device = fleet.device_profile->power_w * fleet.device_profile->batch_time_s *
               fleet.device_profile->batches_per_round;
  const double mesh_ee =
      links.ee_mesh ? *links.ee_mesh
                    : (links.ee_up * links.ee_down) / (links.ee_up + links.ee_down);

  Accumulated acc;
  acc.active_rounds.assign(static_cast<size_t>(K), 0.0);
  acc.mesh_sends.assign(static_cast<size_t>(K), 0.0);
  const auto add = [&](int role, int node, CostKind kind, double joules) {
    acc.ledger[{role, node, static_cast<int>(kind)}] += joules;
  };

  if (scheme == fedcarbon::Scheme::CL) {
    for (int k = 0; k < K; ++k) {
      const double j = links.dataset_bits_per_device / links.ee_up;
      acc.up += j;
      add(1, k, CostKind::Uplink, j);
    }
    for (long long t = 0; t < rounds; ++t) {
      const double j = gamma * e_center;
      acc.compute_center += j;
      add(0, -1, CostKind::Compute, j);
    }
    return acc;
  }

  std::vector<std::vector<int>> schedule;
  if (rounds > 0 && Ka > 0)
    schedule = fedcarbon::round_robin_schedule(K, Ka, static_cast<int>(rounds)).rounds;

  for (long long t = 0; t < rounds; ++t) {
    const std::vector<int>& active =
        schedule.empty() ? std::vector<int>{} : schedule[static_cast<size_t>(t)];
    if (scheme == fedcarbon::Scheme::FL) {
      for (int k : active) {
        acc.active_rounds[static_cast<size_t>(k)] += 1.0;
        const double jc = e_device;  // device PUE is 1
        acc.compute_device += jc;
        add(1, k, CostKind::Compute, jc);
        const double ju = links.model_bits / links.ee_up;
        acc.up += ju;
        add(1, k, CostKind::Uplink, ju);
      }
      const double jp = gamma * (fleet.center_profile.avg_fraction * e_center);
      acc.compute_center += jp;
      add(0, -1, CostKind::Compute, jp);
      const int downlinks = dl_broadcast ? 1 : K;
      for (int d = 0; d < downlinks; ++d) {
        const double jd = gamma * (links.model_bits / links.ee_down);
        acc.down += jd;
        add(0, -1, CostKind::Downlink, jd);
      }
    } else {  // CFL
      for (int k : active) {
        acc.active_rounds[static_cast<size_t>(k)] += 1.0;
        const double jc = e_device;
        acc.compute_device += jc;
        add(1, k, CostKind::Compute, jc);
        for (int s = 0; s < N; ++s) {
          acc.mesh_sends[static_cast<size_t>(k)] += 1.0;
          const double jm = links.model_bits / mesh_ee;
          acc.mesh += jm;
          add(1, k, CostKind::Mesh, jm);
        }
      }
    }
  }
  return acc;
}

// Ledger of a production breakdown in the oracle's map shape.
inline std::map<std::tuple<int, int, int>, double> ledger_of(
    const fedcarbon::EnergyBreakdown& breakdown) {
  std::map<std::tuple<int, int, int>, double> out;
  for (const fedcarbon::EnergyEntry& e : breakdown.per_node)
    out[{e.role == fedcarbon::Role::Center ? 0 : 1, e.node, static_cast<int>(e.kind)}] +=
        e.joules;
  return out;
}

}  // namespace oracle
