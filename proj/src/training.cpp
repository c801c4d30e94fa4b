#include "fedcarbon/training.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fedcarbon/federate.hpp"
#include "fedcarbon/parallel.hpp"
#include "fedcarbon/rng.hpp"

namespace fedcarbon {

namespace {

constexpr std::uint64_t kInitStream = 0x01;
constexpr std::uint64_t kTrainStream = 0x02;
constexpr std::uint64_t kNeighborStream = 0x03;

std::uint64_t train_seed(std::uint64_t base, int node, int round) {
  return CounterRng(base, static_cast<std::uint64_t>(node),
                    static_cast<std::uint64_t>(round))
      .next_u64();
}

struct DeviceOutcome {
  ParamVector params;
  std::vector<int> neighbors;  // CFL: mesh peers contacted this round
};

}  // namespace

TrainingTrace run_training(const LearnerSpec& learner, const Dataset& data,
                           const DatasetPartition& partition, const Topology& topology,
                           const ActiveSchedule& schedule, const SimOptions& options) {
  learner.validate();
  if (options.max_rounds < 1)
    throw std::invalid_argument("run_training: max_rounds must be >= 1");
  if (data.validation.empty())
    throw std::invalid_argument("run_training: empty validation split");
  const int devices = partition.devices();
  if (topology.node_count() != devices)
    throw std::invalid_argument("run_training: topology/partition device count mismatch");
  validate_topology(topology, options.scheme);

  std::vector<char> eligible(static_cast<size_t>(devices), 0);
  std::vector<double> shard_sizes(static_cast<size_t>(devices), 0.0);
  long long eligible_count = 0;
  for (int k = 0; k < devices; ++k) {
    shard_sizes[static_cast<size_t>(k)] =
        static_cast<double>(partition.device_examples[static_cast<size_t>(k)].size());
    if (!partition.device_examples[static_cast<size_t>(k)].empty()) {
      eligible[static_cast<size_t>(k)] = 1;
      ++eligible_count;
    }
  }
  if (eligible_count == 0)
    throw std::invalid_argument("run_training: no device holds any data");

  if (options.scheme != Scheme::CL &&
      static_cast<int>(schedule.rounds.size()) < options.max_rounds)
    throw std::invalid_argument("run_training: schedule shorter than max_rounds");

  const std::uint64_t init_seed = derive_seed(options.seed, kInitStream);
  const std::uint64_t train_base = derive_seed(options.seed, kTrainStream);
  const std::uint64_t neighbor_seed = derive_seed(options.seed, kNeighborStream);

  TrainingTrace trace;
  trace.scheme = options.scheme;

  // CFL neighbor draws only consider devices that hold data.
  Topology mesh = topology;
  if (options.scheme == Scheme::CFL && eligible_count < devices) {
    std::vector<std::pair<int, int>> kept;
    for (const auto& [a, b] : topology.edges())
      if (eligible[static_cast<size_t>(a)] && eligible[static_cast<size_t>(b)])
        kept.emplace_back(a, b);
    mesh = Topology::custom(devices, std::move(kept));
  }

  const ParamVector initial = init_params(learner, init_seed);

  // Scheme state.
  ParamVector global = initial;                  // CL model / FL global model
  std::vector<ParamVector> local;                // CFL per-device models
  if (options.scheme == Scheme::CFL)
    local.assign(static_cast<size_t>(devices), initial);

  std::vector<int> pooled;  // CL training set: union of the shards
  if (options.scheme == Scheme::CL) {
    for (const auto& shard : partition.device_examples)
      pooled.insert(pooled.end(), shard.begin(), shard.end());
    std::sort(pooled.begin(), pooled.end());
    // One-time raw-data upload, all devices.
    for (int k = 0; k < devices; ++k)
      trace.events.push_back({0, CostKind::Uplink, Role::Device, k, Role::Center, -1,
                              options.dataset_bits_per_device, 0.0});
  }

  double total_examples = 0.0;  // over devices holding data
  for (int k = 0; k < devices; ++k) total_examples += shard_sizes[static_cast<size_t>(k)];

  for (int round = 1; round <= options.max_rounds; ++round) {
    RoundRecord record;
    record.round = round;
    ParamVector eval_model;

    if (options.scheme == Scheme::CL) {
      auto result = local_train(std::move(global), data.train, pooled, learner,
                                options.batches_per_round,
                                train_seed(train_base, devices, round));
      global = std::move(result.params);
      trace.events.push_back(
          {round, CostKind::Compute, Role::Center, -1, Role::Center, -1, 0.0, 1.0});
      eval_model = global;
    } else {
      // Scheduled devices that actually hold data.
      for (int k : schedule.rounds[static_cast<size_t>(round - 1)])
        if (k >= 0 && k < devices && eligible[static_cast<size_t>(k)])
          record.active.push_back(k);

      std::vector<DeviceOutcome> outcomes(record.active.size());
      const auto train_device = [&](int slot) {
        const int k = record.active[static_cast<size_t>(slot)];
        const auto& shard = partition.device_examples[static_cast<size_t>(k)];
        ParamVector start;
        if (options.scheme == Scheme::FL) {
          start = global;
        } else {
          std::vector<int> peers;
          if (mesh.degree(k) > 0)
            peers = select_neighbors(mesh, k, round, options.neighbors, neighbor_seed);
          if (peers.empty()) {
            start = local[static_cast<size_t>(k)];
          } else {
            std::vector<WeightedModel> neighbor_models;
            neighbor_models.reserve(peers.size());
            for (int h : peers)
              neighbor_models.push_back(
                  {local[static_cast<size_t>(h)], shard_sizes[static_cast<size_t>(h)]});
            start = consensus_step({local[static_cast<size_t>(k)],
                                    shard_sizes[static_cast<size_t>(k)]},
                                   neighbor_models, options.neighbors);
          }
          outcomes[static_cast<size_t>(slot)].neighbors = std::move(peers);
        }
        auto result = local_train(std::move(start), data.train, shard, learner,
                                  options.batches_per_round,
                                  train_seed(train_base, k, round));
        outcomes[static_cast<size_t>(slot)].params = std::move(result.params);
      };
      parallel_for(static_cast<int>(record.active.size()), options.threads, train_device);

      if (options.scheme == Scheme::FL) {
        std::vector<WeightedModel> received;
        received.reserve(record.active.size());
        for (size_t slot = 0; slot < record.active.size(); ++slot) {
          const int k = record.active[slot];
          trace.events.push_back(
              {round, CostKind::Compute, Role::Device, k, Role::Device, k, 0.0, 1.0});
          trace.events.push_back({round, CostKind::Uplink, Role::Device, k, Role::Center,
                                  -1, options.model_bits, 0.0});
          received.push_back({std::move(outcomes[slot].params),
                              shard_sizes[static_cast<size_t>(k)]});
        }
        if (!received.empty())
          global = options.literal_fedavg
                       ? fedavg_aggregate_literal(received, total_examples)
                       : fedavg_aggregate(received);
        // The server runs its merge slot and the downlink every round, even
        // if a degenerate schedule produced no uploads.
        trace.events.push_back({round, CostKind::Compute, Role::Center, -1, Role::Center,
                                -1, 0.0, options.ps_work_fraction});
        if (options.dl_broadcast) {
          trace.events.push_back({round, CostKind::Downlink, Role::Center, -1,
                                  Role::Device, -1, options.model_bits, 0.0});
        } else {
          // Every device decodes the new model, scheduled or not.
          for (int k = 0; k < devices; ++k)
            trace.events.push_back({round, CostKind::Downlink, Role::Center, -1,
                                    Role::Device, k, options.model_bits, 0.0});
        }
        eval_model = global;
      } else {
        for (size_t slot = 0; slot < record.active.size(); ++slot) {
          const int k = record.active[slot];
          for (int h : outcomes[slot].neighbors)
            trace.events.push_back({round, CostKind::Mesh, Role::Device, k, Role::Device,
                                    h, options.model_bits, 0.0});
          trace.events.push_back(
              {round, CostKind::Compute, Role::Device, k, Role::Device, k, 0.0, 1.0});
          local[static_cast<size_t>(k)] = std::move(outcomes[slot].params);
        }
        // Fleet-average model over devices holding data.
        eval_model.assign(initial.size(), 0.0);
        for (int k = 0; k < devices; ++k) {
          if (!eligible[static_cast<size_t>(k)]) continue;
          const ParamVector& p = local[static_cast<size_t>(k)];
          for (size_t i = 0; i < eval_model.size(); ++i) eval_model[i] += p[i];
        }
        for (double& v : eval_model) v /= static_cast<double>(eligible_count);
      }
    }

    record.val_loss = dataset_loss(learner, eval_model, data.validation);
    record.accuracy = dataset_accuracy(learner, eval_model, data.validation);
    trace.rounds.push_back(std::move(record));

    if (trace.rounds.back().val_loss <= options.target_loss) {
      trace.target_reached = true;
      break;
    }
  }
  return trace;
}

std::optional<int> rounds_to_target(const TrainingTrace& trace, double target_loss) {
  for (const RoundRecord& record : trace.rounds)
    if (record.val_loss <= target_loss) return record.round;
  return std::nullopt;
}

}  // namespace fedcarbon
