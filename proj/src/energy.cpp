#include "fedcarbon/energy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fedcarbon {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

bool finite_pos(double x) { return std::isfinite(x) && x > 0.0; }

// Checks a per-device count vector passed in by a caller that replays a
// simulated schedule.
void check_counts(const std::optional<std::vector<double>>& counts, int devices,
                  const char* what) {
  if (!counts) return;
  require(static_cast<int>(counts->size()) == devices,
          std::string(what) + ": expected one entry per device");
  for (double c : *counts)
    require(std::isfinite(c) && c >= 0.0, std::string(what) + ": negative or non-finite entry");
}

}  // namespace

void ComputeProfile::validate(const char* what) const {
  const std::string w(what);
  require(finite_pos(power_w), w + ": power_w must be > 0");
  require(finite_pos(batch_time_s), w + ": batch_time_s must be > 0");
  require(batches_per_round >= 1, w + ": batches_per_round must be >= 1");
  require(std::isfinite(pue) && pue >= 1.0, w + ": pue must be >= 1");
  require(std::isfinite(avg_fraction) && avg_fraction > 0.0 && avg_fraction <= 1.0,
          w + ": avg_fraction must be in (0, 1]");
}

double round_compute_energy(const ComputeProfile& profile) {
  profile.validate("compute profile");
  return profile.power_w * profile.batch_time_s * profile.batches_per_round;
}

double transfer_energy(double bits, double ee_bits_per_joule) {
  require(std::isfinite(bits) && bits >= 0.0, "transfer_energy: bits must be >= 0");
  require(ee_bits_per_joule > 0.0 && !std::isnan(ee_bits_per_joule),
          "transfer_energy: efficiency must be > 0 bit/J");
  return bits / ee_bits_per_joule;
}

double ee_mesh_compose(double ee_up, double ee_down) {
  require(ee_up > 0.0 && !std::isnan(ee_up), "ee_mesh_compose: uplink efficiency must be > 0");
  require(ee_down > 0.0 && !std::isnan(ee_down), "ee_mesh_compose: downlink efficiency must be > 0");
  if (std::isinf(ee_up)) return ee_down;
  if (std::isinf(ee_down)) return ee_up;
  return (ee_up * ee_down) / (ee_up + ee_down);
}

double ee_from_link(double power_w, double throughput_bps) {
  require(finite_pos(power_w), "ee_from_link: power_w must be > 0");
  require(finite_pos(throughput_bps), "ee_from_link: throughput must be > 0");
  return throughput_bps / power_w;
}

double LinkEfficiencies::effective_mesh_ee() const {
  return ee_mesh ? *ee_mesh : ee_mesh_compose(ee_up, ee_down);
}

void LinkEfficiencies::validate() const {
  require(ee_up > 0.0 && !std::isnan(ee_up), "links.ee_up must be > 0");
  require(ee_down > 0.0 && !std::isnan(ee_down), "links.ee_down must be > 0");
  if (ee_mesh)
    require(*ee_mesh > 0.0 && !std::isnan(*ee_mesh), "links.ee_mesh must be > 0");
  require(finite_pos(model_bits), "links.model_bits must be > 0");
  require(std::isfinite(dataset_bits_per_device) && dataset_bits_per_device >= 0.0,
          "links.dataset_bits_per_device must be >= 0");
}

std::vector<std::string> LinkEfficiencies::warnings() const {
  std::vector<std::string> out;
  if (dataset_bits_per_device > 0.0 && dataset_bits_per_device < model_bits) {
    std::ostringstream os;
    os << "raw dataset per device (" << dataset_bits_per_device
       << " bits) is smaller than a model exchange (" << model_bits
       << " bits); the cost model assumes models are far smaller than raw data";
    out.push_back(os.str());
  }
  return out;
}

void FleetSpec::validate() const {
  require(total_devices >= 0, "fleet.total_devices must be >= 0");
  require(active_per_round >= 0, "fleet.active_per_round must be >= 0");
  require(active_per_round <= total_devices,
          "fleet.active_per_round exceeds total_devices");
  require(neighbors_per_round >= 0, "fleet.neighbors_per_round must be >= 0");
  center_profile.validate("fleet.center_profile");
  if (device_energy_source == DeviceEnergySource::Profile) {
    require(device_profile.has_value(),
            "fleet.device_profile required when device_energy_source=profile");
    device_profile->validate("fleet.device_profile");
  } else {
    require(finite_pos(compute_ratio),
            "fleet.compute_ratio must be > 0 when device_energy_source=ratio");
  }
}

std::vector<std::string> FleetSpec::warnings() const {
  std::vector<std::string> out;
  const double ratio = implied_compute_ratio();
  if (ratio >= 1.0) {
    std::ostringstream os;
    os << "device round energy is not smaller than the data center's (ratio "
       << ratio << "); edge hardware is normally the cheaper side";
    out.push_back(os.str());
  }
  return out;
}

double FleetSpec::center_round_energy_j() const {
  return round_compute_energy(center_profile);
}

double FleetSpec::device_round_energy_j() const {
  if (device_energy_source == DeviceEnergySource::Ratio)
    return compute_ratio * center_round_energy_j();
  require(device_profile.has_value(), "fleet.device_profile missing");
  return round_compute_energy(*device_profile);
}

double FleetSpec::implied_compute_ratio() const {
  return device_round_energy_j() / center_round_energy_j();
}

EnergyBreakdown energy_cl(long long rounds, const FleetSpec& fleet,
                          const LinkEfficiencies& links) {
  require(rounds >= 0, "energy_cl: rounds must be >= 0");
  fleet.validate();
  links.validate();

  const double gamma = fleet.center_profile.pue;
  const double compute_rate = gamma * fleet.center_round_energy_j();  // J/round
  const double upload_each = transfer_energy(links.dataset_bits_per_device, links.ee_up);

  EnergyBreakdown out;
  out.compute_center_j = compute_rate * rounds;
  out.comm_up_j = upload_each * fleet.total_devices;  // one-time, round-free

  if (out.compute_center_j != 0.0)
    out.per_node.push_back({Role::Center, -1, CostKind::Compute, out.compute_center_j});
  if (upload_each != 0.0)
    for (int k = 0; k < fleet.total_devices; ++k)
      out.per_node.push_back({Role::Device, k, CostKind::Uplink, upload_each});
  return out;
}

EnergyBreakdown energy_fl(long long rounds, const FleetSpec& fleet,
                          const LinkEfficiencies& links,
                          const FlBillingOptions& options) {
  require(rounds >= 0, "energy_fl: rounds must be >= 0");
  fleet.validate();
  links.validate();
  check_counts(options.active_rounds, fleet.total_devices, "energy_fl.active_rounds");

  const int devices = fleet.total_devices;
  const double gamma = fleet.center_profile.pue;
  const double beta = fleet.center_profile.avg_fraction;
  const double e_center = fleet.center_round_energy_j();
  const double e_device = fleet.device_round_energy_j();
  const double ul_each = transfer_energy(links.model_bits, links.ee_up);
  const double dl_each = gamma * transfer_energy(links.model_bits, links.ee_down);

  const double ps_rate = gamma * beta * e_center;
  const double dl_rate = options.dl_broadcast ? dl_each : dl_each * devices;

  EnergyBreakdown out;
  out.compute_center_j = ps_rate * rounds;
  out.comm_down_j = dl_rate * rounds;

  if (out.compute_center_j != 0.0)
    out.per_node.push_back({Role::Center, -1, CostKind::Compute, out.compute_center_j});
  if (out.comm_down_j != 0.0)
    out.per_node.push_back({Role::Center, -1, CostKind::Downlink, out.comm_down_j});

  if (options.active_rounds) {
    double sum_active = 0.0;
    for (int k = 0; k < devices; ++k) {
      const double a = (*options.active_rounds)[k];
      sum_active += a;
      if (a == 0.0) continue;
      out.per_node.push_back({Role::Device, k, CostKind::Uplink, ul_each * a});
      out.per_node.push_back({Role::Device, k, CostKind::Compute, e_device * a});
    }
    out.comm_up_j = ul_each * sum_active;
    out.compute_device_j = e_device * sum_active;
  } else {
    out.comm_up_j = (ul_each * fleet.active_per_round) * rounds;
    out.compute_device_j = (e_device * fleet.active_per_round) * rounds;
    if (devices > 0 && fleet.active_per_round > 0 && rounds > 0) {
      // Long-run round-robin share of active rounds per device.
      const double share =
          static_cast<double>(rounds) * fleet.active_per_round / devices;
      for (int k = 0; k < devices; ++k) {
        out.per_node.push_back({Role::Device, k, CostKind::Uplink, ul_each * share});
        out.per_node.push_back({Role::Device, k, CostKind::Compute, e_device * share});
      }
    }
  }
  return out;
}

EnergyBreakdown energy_cfl(long long rounds, const FleetSpec& fleet,
                           const LinkEfficiencies& links,
                           const CflBillingOptions& options) {
  require(rounds >= 0, "energy_cfl: rounds must be >= 0");
  fleet.validate();
  links.validate();
  require(fleet.neighbors_per_round >= 1, "energy_cfl: neighbors_per_round must be >= 1");
  check_counts(options.active_rounds, fleet.total_devices, "energy_cfl.active_rounds");
  check_counts(options.mesh_sends, fleet.total_devices, "energy_cfl.mesh_sends");

  const int devices = fleet.total_devices;
  const double e_device = fleet.device_round_energy_j();
  const double mesh_each = transfer_energy(links.model_bits, links.effective_mesh_ee());

  EnergyBreakdown out;
  if (options.active_rounds || options.mesh_sends) {
    double sum_active = 0.0;
    double sum_sends = 0.0;
    for (int k = 0; k < devices; ++k) {
      const double a = options.active_rounds
                           ? (*options.active_rounds)[k]
                           : static_cast<double>(rounds) * fleet.active_per_round / devices;
      const double m = options.mesh_sends ? (*options.mesh_sends)[k]
                                          : a * fleet.neighbors_per_round;
      sum_active += a;
      sum_sends += m;
      if (a != 0.0)
        out.per_node.push_back({Role::Device, k, CostKind::Compute, e_device * a});
      if (m != 0.0)
        out.per_node.push_back({Role::Device, k, CostKind::Mesh, mesh_each * m});
    }
    out.compute_device_j = e_device * sum_active;
    out.comm_mesh_j = mesh_each * sum_sends;
  } else {
    out.compute_device_j = (e_device * fleet.active_per_round) * rounds;
    out.comm_mesh_j =
        (mesh_each * fleet.active_per_round * fleet.neighbors_per_round) * rounds;
    if (devices > 0 && fleet.active_per_round > 0 && rounds > 0) {
      const double share =
          static_cast<double>(rounds) * fleet.active_per_round / devices;
      for (int k = 0; k < devices; ++k) {
        out.per_node.push_back({Role::Device, k, CostKind::Compute, e_device * share});
        if (mesh_each != 0.0)
          out.per_node.push_back(
              {Role::Device, k, CostKind::Mesh, mesh_each * share * fleet.neighbors_per_round});
      }
    }
  }
  return out;
}

}  // namespace fedcarbon
