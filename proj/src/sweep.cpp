#include "fedcarbon/sweep.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fedcarbon/carbon.hpp"

namespace fedcarbon {

namespace {

int to_count(double value, const std::string& param) {
  if (!(std::isfinite(value)) || std::floor(value) != value || value < 0 ||
      value > 2e9)
    throw ConfigError("sweep." + param + ": expected a non-negative integer, got " +
                      std::to_string(value));
  return static_cast<int>(value);
}

}  // namespace

ExperimentConfig apply_sweep_value(const ExperimentConfig& config,
                                   const std::string& raw_param, double value) {
  // Result-column spellings are accepted as aliases.
  std::string param = raw_param;
  if (param == "K") param = "total_devices";
  if (param == "K_a") param = "active_per_round";
  if (param == "N") param = "neighbors";

  ExperimentConfig out = config;
  if (param == "n") {
    out.rounds = static_cast<long long>(to_count(value, param));
  } else if (param == "ee") {
    out.links.ee_up = value;
    out.links.ee_down = value;
    out.links.ee_mesh = ee_mesh_compose(value, value);
  } else if (param == "ee_up") {
    out.links.ee_up = value;
  } else if (param == "ee_down") {
    out.links.ee_down = value;
  } else if (param == "ee_mesh") {
    out.links.ee_mesh = value;
  } else if (param == "total_devices") {
    const int devices = to_count(value, param);
    // Device intensities must be uniform to be resizable along this axis.
    for (double ci : config.carbon.ci_device)
      if (ci != config.carbon.ci_device.front())
        throw ConfigError("sweep.total_devices: per-device carbon intensities differ; "
                          "cannot resize the fleet");
    out.fleet.total_devices = devices;
    const double ci = config.carbon.ci_device.empty() ? config.carbon.ci_center
                                                      : config.carbon.ci_device.front();
    out.carbon.ci_device.assign(static_cast<size_t>(devices), ci);
  } else if (param == "active_per_round") {
    out.fleet.active_per_round = to_count(value, param);
  } else if (param == "neighbors") {
    out.fleet.neighbors_per_round = to_count(value, param);
  } else if (param == "model_bits") {
    out.links.model_bits = value;
  } else if (param == "dataset_bits_per_device") {
    out.links.dataset_bits_per_device = value;
  } else if (param == "ci_all") {
    out.carbon.ci_center = value;
    out.carbon.ci_device.assign(out.carbon.ci_device.size(), value);
  } else if (param == "ci_center") {
    out.carbon.ci_center = value;
  } else if (param == "ci_device") {
    out.carbon.ci_device.assign(out.carbon.ci_device.size(), value);
  } else if (param == "retrain_period_h") {
    out.retrain_period_h = value;
  } else {
    throw ConfigError("sweep: unknown parameter \"" + param + "\"");
  }
  return out;
}

std::vector<ResultRow> evaluate_point(const ExperimentConfig& config) {
  if (!config.analytic_mode())
    throw ConfigError("closed-form evaluation needs fixed-rounds mode");
  const long long n = *config.rounds;
  try {
    config.fleet.validate();
    config.links.validate();
    config.carbon.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("sweep point invalid: ") + e.what());
  }
  if (static_cast<int>(config.carbon.ci_device.size()) != config.fleet.total_devices)
    throw ConfigError("sweep point invalid: carbon map does not cover the fleet");

  std::vector<ResultRow> rows;
  rows.reserve(config.schemes.size());
  for (Scheme scheme : config.schemes) {
    EnergyBreakdown breakdown;
    switch (scheme) {
      case Scheme::CL:
        breakdown = energy_cl(n, config.fleet, config.links);
        break;
      case Scheme::FL: {
        FlBillingOptions options;
        options.dl_broadcast = config.dl_broadcast;
        breakdown = energy_fl(n, config.fleet, config.links, options);
        break;
      }
      case Scheme::CFL:
        breakdown = energy_cfl(n, config.fleet, config.links);
        break;
    }
    const CarbonReport report = carbon_of(breakdown, config.carbon);

    ResultRow row;
    row.scheme = scheme;
    row.n = n;
    row.k_total = config.fleet.total_devices;
    row.k_active = config.fleet.active_per_round;
    row.neighbors = config.fleet.neighbors_per_round;
    row.ee_u = config.links.ee_up;
    row.ee_d = config.links.ee_down;
    row.ee_m = config.links.effective_mesh_ee();
    row.energy_compute_j = breakdown.compute_j();
    row.energy_comm_j = breakdown.comm_j();
    row.energy_total_j = breakdown.total_j();
    row.carbon_comm_g = report.comm_g;
    row.carbon_compute_g = report.compute_g;
    row.carbon_total_g = report.total_g;
    row.loss_final = std::numeric_limits<double>::quiet_NaN();
    row.target_reached = -1;
    row.kg_per_year = annualize_kg_per_year(report.total_g, config.retrain_period_h);
    rows.push_back(row);
  }
  return rows;
}

std::vector<ResultRow> run_analysis(const ExperimentConfig& config) {
  return run_analysis(config, config.sweep);
}

std::vector<ResultRow> run_analysis(const ExperimentConfig& config,
                                    const std::vector<SweepAxis>& axes) {
  if (!config.analytic_mode())
    throw ConfigError("analyze runs need fixed-rounds mode (set \"rounds\")");
  for (const SweepAxis& axis : axes)
    if (axis.values.empty()) throw ConfigError("sweep." + axis.param + ": no values");

  long long grid = 1;
  for (const SweepAxis& axis : axes) grid *= static_cast<long long>(axis.values.size());
  if (grid > 100000) throw ConfigError("sweep grid exceeds 100000 points");

  std::vector<ResultRow> rows;
  std::vector<size_t> index(axes.size(), 0);
  for (long long point = 0; point < grid; ++point) {
    ExperimentConfig resolved = config;
    // Mixed-radix decode, first axis slowest.
    long long rem = point;
    for (size_t a = axes.size(); a-- > 0;) {
      index[a] = static_cast<size_t>(rem % static_cast<long long>(axes[a].values.size()));
      rem /= static_cast<long long>(axes[a].values.size());
    }
    for (size_t a = 0; a < axes.size(); ++a)
      resolved = apply_sweep_value(resolved, axes[a].param, axes[a].values[index[a]]);
    for (ResultRow& row : evaluate_point(resolved)) rows.push_back(row);
  }
  return rows;
}

}  // namespace fedcarbon
