#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "fedcarbon/energy.hpp"

namespace fedcarbon {

// Grid carbon intensity per node, kgCO2-eq/kWh. One value for the data
// center and one per device (devices may sit in different regions).
struct CarbonIntensityMap {
  double ci_center = 0.0;
  std::vector<double> ci_device;

  static CarbonIntensityMap uniform(double ci, int devices);
  void validate() const;
};

// 2019 EU grid intensities used as named presets, kgCO2-eq/kWh.
inline constexpr double kCiMaxEu = 0.97;
inline constexpr double kCiItaly = 0.28;
inline constexpr double kCiFinland = 0.11;

// Preset lookup: "max-EU", "IT", "FI".
std::optional<double> carbon_preset(std::string_view name);

struct CarbonEntry {
  Role role;
  int node;
  CostKind kind;
  double grams;
};

// Emissions of one training run, gCO2-eq, split communication vs compute.
struct CarbonReport {
  double total_g = 0.0;
  double comm_g = 0.0;
  double compute_g = 0.0;
  std::vector<CarbonEntry> per_node;
};

// grams CO2-eq for `joules` consumed in a region of the given intensity.
double joules_to_grams_co2(double joules, double ci_kg_per_kwh);

// Bills every ledger entry at the intensity of the node that spent the
// energy: center-side entries (data-center/PS compute, downlink
// transmissions) at ci_center, device-side entries at ci_device[node].
// Throws std::out_of_range when a device is missing from the map.
CarbonReport carbon_of(const EnergyBreakdown& breakdown,
                       const CarbonIntensityMap& intensities);

// kgCO2-eq per year when a training run emitting `grams_per_training` is
// repeated every `retrain_period_h` hours.
double annualize_kg_per_year(double grams_per_training, double retrain_period_h);

}  // namespace fedcarbon
