#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fedcarbon/common.hpp"

namespace fedcarbon {

// Compute cost of one training round at a node.
//
// A round runs `batches_per_round` mini-batches, each taking `batch_time_s`
// at an electrical draw of `power_w`. `pue` is the facility overhead
// multiplier (cooling, power delivery); it is applied by the scheme totals,
// never here, and is fixed at 1 for edge devices. `avg_fraction` is the
// fraction of a batch time the parameter server spends merging models.
struct ComputeProfile {
  double power_w = 0.0;
  double batch_time_s = 0.0;
  int batches_per_round = 0;
  double pue = 1.0;
  double avg_fraction = 1.0;

  // Throws std::invalid_argument on a bad field; `what` prefixes messages.
  void validate(const char* what) const;
};

// Joules for one round of local optimization: power * batch_time * batches.
// PUE is intentionally not applied here.
double round_compute_energy(const ComputeProfile& profile);

// Joules to move `bits` over a link with efficiency `ee_bits_per_joule`.
double transfer_energy(double bits, double ee_bits_per_joule);

// Effective efficiency of a device-to-device exchange relayed through a
// router: an uplink hop followed by a downlink hop, costs adding up, so
// the efficiencies combine harmonically. Computed as up*down/(up+down),
// which is the same quantity but exact when both legs are equal.
// An infinite leg is free: compose(ee, inf) == ee.
double ee_mesh_compose(double ee_up, double ee_down);

// bit/J of a link from radio power draw and net throughput.
double ee_from_link(double power_w, double throughput_bps);

// Link efficiencies (bit/J) and payload sizes (bits) of the deployment.
// `ee_mesh` may be left unset, in which case mesh exchanges are billed at
// the router-relayed composition of uplink and downlink.
struct LinkEfficiencies {
  double ee_up = 0.0;
  double ee_down = 0.0;
  std::optional<double> ee_mesh;
  double model_bits = 0.0;              // size of one exchanged model
  double dataset_bits_per_device = 0.0; // raw data a device would upload

  double effective_mesh_ee() const;
  void validate() const;
  std::vector<std::string> warnings() const;
};

// Which quantity defines the per-round device compute energy. Deployments
// report either a measured device profile or a device/center energy ratio;
// the two are usually not mutually consistent, so a spec picks exactly one
// and the other is derived for reporting.
enum class DeviceEnergySource { Profile, Ratio };

// Fleet shape and compute hardware.
struct FleetSpec {
  int total_devices = 0;     // K
  int active_per_round = 0;  // devices that train in a given round
  int neighbors_per_round = 1;
  DeviceEnergySource device_energy_source = DeviceEnergySource::Profile;
  double compute_ratio = 0.0;                   // device/center energy ratio
  std::optional<ComputeProfile> device_profile; // required for Profile source
  ComputeProfile center_profile;

  void validate() const;
  std::vector<std::string> warnings() const;

  double center_round_energy_j() const;  // full round at the data center
  double device_round_energy_j() const;  // per active device, chosen source
  double implied_compute_ratio() const;  // device/center, whatever the source
};

// One line of the per-node energy ledger.
struct EnergyEntry {
  Role role;
  int node;  // device index; -1 for the center
  CostKind kind;
  double joules;
};

// Energy of a whole training run split by category and by node.
// Category fields are the closed-form values; the ledger refines them per
// node and sums back to them (to rounding).
struct EnergyBreakdown {
  double compute_device_j = 0.0;
  double compute_center_j = 0.0;
  double comm_up_j = 0.0;
  double comm_down_j = 0.0;
  double comm_mesh_j = 0.0;
  std::vector<EnergyEntry> per_node;

  double compute_j() const { return compute_device_j + compute_center_j; }
  double comm_j() const { return comm_up_j + comm_down_j + comm_mesh_j; }
  double total_j() const { return compute_j() + comm_j(); }
};

// Options refining how closed-form federated costs are attributed.
//
// By default every device is billed the long-run round-robin share
// n*active/K of the active-device costs. A simulated run can pass its
// realized per-device activity instead so that per-node billing matches
// the event log exactly (category totals then derive from the counts).
struct FlBillingOptions {
  bool dl_broadcast = false;  // one downlink transmission per round instead of K
  std::optional<std::vector<double>> active_rounds;  // per device
};

struct CflBillingOptions {
  std::optional<std::vector<double>> active_rounds;  // per device
  std::optional<std::vector<double>> mesh_sends;     // per device, total sends
};

// Centralized training for `rounds` rounds: a one-time raw-data upload from
// every device plus PUE-weighted data-center compute per round.
EnergyBreakdown energy_cl(long long rounds, const FleetSpec& fleet,
                          const LinkEfficiencies& links);

// Parameter-server federated training: per round, every active device runs
// a local round and uploads one model; the server merges (avg_fraction of a
// center round, PUE-weighted) and sends the model downlink to all
// `total_devices` (their radios stay on to decode it), PUE-weighted as a
// center-originated transmission.
EnergyBreakdown energy_fl(long long rounds, const FleetSpec& fleet,
                          const LinkEfficiencies& links,
                          const FlBillingOptions& options = {});

// Consensus federated training: device-side only. Per round, every active
// device sends its model to `neighbors_per_round` mesh neighbors and runs a
// local round. Center compute and UL/DL are zero by construction.
EnergyBreakdown energy_cfl(long long rounds, const FleetSpec& fleet,
                           const LinkEfficiencies& links,
                           const CflBillingOptions& options = {});

}  // namespace fedcarbon
