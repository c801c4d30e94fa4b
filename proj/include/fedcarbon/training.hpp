#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fedcarbon/common.hpp"
#include "fedcarbon/dataset.hpp"
#include "fedcarbon/learner.hpp"
#include "fedcarbon/topology.hpp"

namespace fedcarbon {

// One communication or compute action of a simulated run, carrying enough
// to bill it later: payload bits for transmissions, and for compute the
// fraction of a full local round (1.0 for a training round, the averaging
// fraction for a parameter-server merge).
struct CostEvent {
  int round = 0;  // 0 = before training (one-time uploads)
  CostKind kind = CostKind::Compute;
  Role src_role = Role::Device;
  int src = -1;
  Role dst_role = Role::Center;
  int dst = -1;  // -1 = the center, or "all" for a broadcast downlink
  double bits = 0.0;
  double work = 0.0;
};

struct RoundRecord {
  int round = 0;  // 1-based
  std::vector<int> active;
  double val_loss = 0.0;
  double accuracy = 0.0;
};

struct TrainingTrace {
  Scheme scheme = Scheme::CL;
  std::vector<RoundRecord> rounds;
  std::vector<CostEvent> events;
  bool target_reached = false;

  int rounds_run() const { return static_cast<int>(rounds.size()); }
  double final_loss() const { return rounds.empty() ? 0.0 : rounds.back().val_loss; }
};

struct SimOptions {
  Scheme scheme = Scheme::CL;
  int neighbors = 1;          // consensus fanout
  int max_rounds = 200;
  double target_loss = 0.1;
  std::uint64_t seed = 1;
  bool dl_broadcast = false;
  bool literal_fedavg = false;
  int batches_per_round = 3;
  double ps_work_fraction = 0.1;  // merge cost as a fraction of a center round
  double model_bits = 0.0;        // payload sizes used for billing
  double dataset_bits_per_device = 0.0;
  int threads = 1;
};

// Executes the round structure of the chosen scheme on the given data
// placement until the validation loss reaches options.target_loss or
// options.max_rounds is exhausted.
//
//   CL : one model trained on the pooled shards, one upfront raw-data
//        upload event per device, one center compute event per round.
//   FL : per round, scheduled devices (devices with empty shards are
//        skipped) train from the current global model and upload it; the
//        server merges and sends the new model downlink to every device
//        (or once, as a broadcast).
//   CFL: per round, scheduled devices exchange models with mesh neighbors
//        (one mesh event per selected neighbor), average, then train.
//        Neighbor draws consider only devices holding data; a device with
//        no such neighbor trains without averaging that round.
//
// The validation loss is measured on the shared held-out split: for FL on
// the post-merge global model, for CFL on the average of all device models.
// Per-device training may run on options.threads workers; traces are
// identical for any thread count.
TrainingTrace run_training(const LearnerSpec& learner, const Dataset& data,
                           const DatasetPartition& partition, const Topology& topology,
                           const ActiveSchedule& schedule, const SimOptions& options);

// Earliest round whose validation loss is at or below the target.
std::optional<int> rounds_to_target(const TrainingTrace& trace, double target_loss);

}  // namespace fedcarbon
