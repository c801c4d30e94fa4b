#include "fedcarbon/carbon.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fedcarbon/units.hpp"

namespace fedcarbon {

CarbonIntensityMap CarbonIntensityMap::uniform(double ci, int devices) {
  CarbonIntensityMap map;
  map.ci_center = ci;
  map.ci_device.assign(static_cast<size_t>(devices < 0 ? 0 : devices), ci);
  return map;
}

void CarbonIntensityMap::validate() const {
  if (!(std::isfinite(ci_center) && ci_center > 0.0))
    throw std::invalid_argument("carbon.ci_center must be > 0");
  for (size_t k = 0; k < ci_device.size(); ++k)
    if (!(std::isfinite(ci_device[k]) && ci_device[k] > 0.0))
      throw std::invalid_argument("carbon.ci_device[" + std::to_string(k) +
                                  "] must be > 0");
}

std::optional<double> carbon_preset(std::string_view name) {
  if (name == "max-EU") return kCiMaxEu;
  if (name == "IT") return kCiItaly;
  if (name == "FI") return kCiFinland;
  return std::nullopt;
}

double joules_to_grams_co2(double joules, double ci_kg_per_kwh) {
  return joules / kJoulesPerKwh * ci_kg_per_kwh * 1000.0;
}

CarbonReport carbon_of(const EnergyBreakdown& breakdown,
                       const CarbonIntensityMap& intensities) {
  intensities.validate();
  CarbonReport report;
  report.per_node.reserve(breakdown.per_node.size());
  for (const EnergyEntry& entry : breakdown.per_node) {
    double ci;
    if (entry.role == Role::Center) {
      ci = intensities.ci_center;
    } else {
      if (entry.node < 0 || static_cast<size_t>(entry.node) >= intensities.ci_device.size())
        throw std::out_of_range("carbon_of: device " + std::to_string(entry.node) +
                                " has no carbon intensity assigned");
      ci = intensities.ci_device[static_cast<size_t>(entry.node)];
    }
    const double grams = joules_to_grams_co2(entry.joules, ci);
    if (entry.kind == CostKind::Compute)
      report.compute_g += grams;
    else
      report.comm_g += grams;
    report.per_node.push_back({entry.role, entry.node, entry.kind, grams});
  }
  report.total_g = report.comm_g + report.compute_g;
  return report;
}

double annualize_kg_per_year(double grams_per_training, double retrain_period_h) {
  if (!(std::isfinite(retrain_period_h) && retrain_period_h > 0.0))
    throw std::invalid_argument("annualize: retrain period must be > 0 hours");
  if (!(std::isfinite(grams_per_training) && grams_per_training >= 0.0))
    throw std::invalid_argument("annualize: grams must be >= 0");
  const double trainings_per_year = 8760.0 / retrain_period_h;
  return grams_per_training * trainings_per_year / 1000.0;
}

}  // namespace fedcarbon
