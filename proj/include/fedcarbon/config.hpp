#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fedcarbon/carbon.hpp"
#include "fedcarbon/dataset.hpp"
#include "fedcarbon/energy.hpp"
#include "fedcarbon/learner.hpp"
#include "fedcarbon/topology.hpp"

namespace fedcarbon {

// One sweep dimension: a parameter name and the values it takes. Accepted
// parameter names: n, ee, ee_up, ee_down, ee_mesh, total_devices,
// active_per_round, neighbors, model_bits, dataset_bits_per_device,
// ci_all, ci_center, ci_device, retrain_period_h. "ee" sets uplink and
// downlink jointly and re-derives the mesh efficiency as their relayed
// composition.
struct SweepAxis {
  std::string param;
  std::vector<double> values;
};

struct PartitionConfig {
  PartitionMode mode = PartitionMode::Iid;
  int shards_per_device = 1;
};

struct SyntheticDataConfig {
  int per_class = 200;
  double spread = 0.3;
};

// A full experiment description. Exactly one of `rounds` (closed-form mode)
// or `learner` + `target_loss` (simulation mode) is set.
struct ExperimentConfig {
  std::vector<Scheme> schemes;
  FleetSpec fleet;
  LinkEfficiencies links;
  CarbonIntensityMap carbon;
  std::string carbon_preset_name;  // empty when intensities were explicit
  Topology topology = Topology::full_mesh(0);

  std::optional<long long> rounds;
  std::optional<LearnerSpec> learner;
  std::optional<double> target_loss;
  SyntheticDataConfig dataset;
  PartitionConfig partition;
  int max_rounds = 200;

  double retrain_period_h = 3.0;
  std::uint64_t seed = 1;
  bool dl_broadcast = false;
  bool literal_fedavg = false;
  int threads = 1;
  std::vector<SweepAxis> sweep;

  bool analytic_mode() const { return rounds.has_value(); }
  std::vector<std::string> warnings() const;
};

// Parses and fully validates a config file. Unknown keys, schema
// violations and cross-field inconsistencies throw ConfigError with the
// offending field path.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

// Bundled experiment descriptions: fig3a, fig3b, fig3c, table3. Each embeds
// notes stating every modeling assumption it bakes in. Returns nullptr for
// unknown names.
const char* preset_config_text(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace fedcarbon
