#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <vector>

#include "fedcarbon/rng.hpp"
#include "fedcarbon/training.hpp"

using namespace fedcarbon;

namespace {

LearnerSpec toy_learner() {
  LearnerSpec spec;
  spec.input_dim = 8;
  spec.classes = 6;
  spec.batch_size = 32;
  spec.optimizer.step_size = 0.05;
  return spec;
}

SimOptions base_options(Scheme scheme) {
  SimOptions options;
  options.scheme = scheme;
  options.neighbors = 1;
  options.max_rounds = 200;
  options.target_loss = 0.1;
  options.seed = 1;
  options.batches_per_round = 3;
  options.model_bits = 2.32e6;
  options.dataset_bits_per_device = 2.4e8;
  return options;
}

int count_events(const TrainingTrace& trace, CostKind kind) {
  int n = 0;
  for (const CostEvent& e : trace.events) n += e.kind == kind ? 1 : 0;
  return n;
}

TrainingTrace fake_trace(const std::vector<double>& losses) {
  TrainingTrace trace;
  for (size_t i = 0; i < losses.size(); ++i)
    trace.rounds.push_back({static_cast<int>(i + 1), {}, losses[i], 0.0});
  return trace;
}

}  // namespace

TEST_CASE("earliest round at or under the target") {
  CHECK(rounds_to_target(fake_trace({0.9, 0.3, 0.05}), 0.1) == 3);
  CHECK(!rounds_to_target(fake_trace({0.9, 0.3, 0.2}), 0.1).has_value());
  CHECK(rounds_to_target(fake_trace({0.45, 0.3}), 0.45) == 1);  // tie -> earliest
}

TEST_CASE("centralized training reaches an easy target and logs its events") {
  const Dataset data = make_synthetic_dataset(6, 8, 100, 0.2, 5);
  const DatasetPartition partition = partition_dataset(data.train, 4, PartitionMode::Iid, 1, 5);
  const Topology topology = Topology::full_mesh(4);
  SimOptions options = base_options(Scheme::CL);
  options.target_loss = 0.2;

  const TrainingTrace trace =
      run_training(toy_learner(), data, partition, topology, {}, options);
  CHECK(trace.target_reached);
  const int n = trace.rounds_run();
  CHECK(n >= 1);
  CHECK(count_events(trace, CostKind::Uplink) == 4);  // one raw upload per device
  CHECK(count_events(trace, CostKind::Compute) == n);
  CHECK(count_events(trace, CostKind::Downlink) == 0);
  CHECK(count_events(trace, CostKind::Mesh) == 0);
  for (const CostEvent& e : trace.events)
    if (e.kind == CostKind::Uplink) {
      CHECK(e.round == 0);
      CHECK(e.bits == 2.4e8);
    }
  // Losses drop overall on the separable task.
  CHECK(trace.rounds.back().val_loss < trace.rounds.front().val_loss);
  CHECK(trace.rounds.back().accuracy > 0.9);
}

TEST_CASE("federated round structure: uploads, merge, downlinks") {
  const Dataset data = make_synthetic_dataset(6, 8, 60, 0.3, 6);
  const DatasetPartition partition = partition_dataset(data.train, 4, PartitionMode::Iid, 1, 6);
  const Topology topology = Topology::full_mesh(4);
  const ActiveSchedule schedule = round_robin_schedule(4, 2, 3);
  SimOptions options = base_options(Scheme::FL);
  options.target_loss = 0.0;  // unreachable: run all 3 rounds
  options.max_rounds = 3;

  const TrainingTrace trace =
      run_training(toy_learner(), data, partition, topology, schedule, options);
  CHECK(!trace.target_reached);
  CHECK(trace.rounds_run() == 3);
  CHECK(count_events(trace, CostKind::Uplink) == 6);     // K_a per round
  CHECK(count_events(trace, CostKind::Downlink) == 12);  // K per round, unicast
  CHECK(count_events(trace, CostKind::Mesh) == 0);
  // 2 device rounds + 1 merge per round
  CHECK(count_events(trace, CostKind::Compute) == 9);
  int merges = 0;
  for (const CostEvent& e : trace.events)
    if (e.kind == CostKind::Compute && e.src_role == Role::Center) {
      CHECK(e.work == 0.1);
      ++merges;
    }
  CHECK(merges == 3);

  SimOptions broadcast = options;
  broadcast.dl_broadcast = true;
  const TrainingTrace bc =
      run_training(toy_learner(), data, partition, topology, schedule, broadcast);
  CHECK(count_events(bc, CostKind::Downlink) == 3);
}

TEST_CASE("consensus round structure: one mesh event per neighbor link") {
  const Dataset data = make_synthetic_dataset(6, 8, 60, 0.3, 7);
  const DatasetPartition partition = partition_dataset(data.train, 4, PartitionMode::Iid, 1, 7);
  const Topology topology = Topology::ring(4);
  const ActiveSchedule schedule = round_robin_schedule(4, 4, 3);
  SimOptions options = base_options(Scheme::CFL);
  options.target_loss = 0.0;
  options.max_rounds = 3;

  const TrainingTrace trace =
      run_training(toy_learner(), data, partition, topology, schedule, options);
  CHECK(trace.rounds_run() == 3);
  CHECK(count_events(trace, CostKind::Mesh) == 12);  // K_a * N per round
  CHECK(count_events(trace, CostKind::Uplink) == 0);
  CHECK(count_events(trace, CostKind::Downlink) == 0);
  for (const CostEvent& e : trace.events)
    if (e.kind == CostKind::Mesh) {
      CHECK(e.src_role == Role::Device);
      CHECK(e.dst_role == Role::Device);
      CHECK(e.src != e.dst);
      CHECK(e.bits == 2.32e6);
    }
}

TEST_CASE("traces are identical across worker thread counts") {
  const Dataset data = make_synthetic_dataset(6, 8, 60, 0.3, 8);
  const DatasetPartition partition = partition_dataset(data.train, 6, PartitionMode::Iid, 1, 8);
  const Topology topology = Topology::full_mesh(6);
  const ActiveSchedule schedule = round_robin_schedule(6, 4, 10);
  for (Scheme scheme : {Scheme::FL, Scheme::CFL}) {
    SimOptions options = base_options(scheme);
    options.target_loss = 0.0;
    options.max_rounds = 10;
    options.threads = 1;
    const TrainingTrace serial =
        run_training(toy_learner(), data, partition, topology, schedule, options);
    options.threads = 8;
    const TrainingTrace parallel =
        run_training(toy_learner(), data, partition, topology, schedule, options);
    REQUIRE(serial.rounds_run() == parallel.rounds_run());
    for (int t = 0; t < serial.rounds_run(); ++t) {
      CHECK(serial.rounds[static_cast<size_t>(t)].val_loss ==
            parallel.rounds[static_cast<size_t>(t)].val_loss);
      CHECK(serial.rounds[static_cast<size_t>(t)].active ==
            parallel.rounds[static_cast<size_t>(t)].active);
    }
    REQUIRE(serial.events.size() == parallel.events.size());
    for (size_t i = 0; i < serial.events.size(); ++i) {
      CHECK(serial.events[i].kind == parallel.events[i].kind);
      CHECK(serial.events[i].src == parallel.events[i].src);
      CHECK(serial.events[i].dst == parallel.events[i].dst);
    }
  }
}

TEST_CASE("devices without data are skipped but downlinks still reach everyone") {
  // 6 shards over 8 devices: two devices end up empty.
  const Dataset data = make_synthetic_dataset(6, 8, 30, 0.3, 9);
  DatasetPartition partition = partition_dataset(data.train, 6, PartitionMode::Iid, 1, 9);
  partition.device_examples.push_back({});
  partition.device_examples.push_back({});
  const Topology topology = Topology::full_mesh(8);
  const ActiveSchedule schedule = round_robin_schedule(8, 8, 2);
  SimOptions options = base_options(Scheme::FL);
  options.target_loss = 0.0;
  options.max_rounds = 2;

  const TrainingTrace trace =
      run_training(toy_learner(), data, partition, topology, schedule, options);
  for (const RoundRecord& record : trace.rounds) {
    CHECK(record.active.size() == 6);
    for (int k : record.active) CHECK(k < 6);
  }
  CHECK(count_events(trace, CostKind::Uplink) == 12);
  CHECK(count_events(trace, CostKind::Downlink) == 16);  // all 8 devices decode
}

TEST_CASE("non-iid placement needs at least as many rounds as iid") {
  const Dataset data = make_synthetic_dataset(6, 8, 120, 0.3, 1);
  const Topology topology = Topology::full_mesh(6);
  std::vector<int> iid_rounds, shard_rounds;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SimOptions options = base_options(Scheme::FL);
    options.target_loss = 0.35;
    options.max_rounds = 150;
    options.seed = seed;
    const ActiveSchedule schedule = round_robin_schedule(6, 4, options.max_rounds);

    const DatasetPartition iid =
        partition_dataset(data.train, 6, PartitionMode::Iid, 1, seed);
    const TrainingTrace iid_trace =
        run_training(toy_learner(), data, iid, topology, schedule, options);
    iid_rounds.push_back(iid_trace.target_reached ? iid_trace.rounds_run()
                                                  : options.max_rounds + 1);

    const DatasetPartition shards =
        partition_dataset(data.train, 6, PartitionMode::LabelShard, 1, seed);
    const TrainingTrace shard_trace =
        run_training(toy_learner(), data, shards, topology, schedule, options);
    shard_rounds.push_back(shard_trace.target_reached ? shard_trace.rounds_run()
                                                      : options.max_rounds + 1);
  }
  std::sort(iid_rounds.begin(), iid_rounds.end());
  std::sort(shard_rounds.begin(), shard_rounds.end());
  const int iid_median = iid_rounds[iid_rounds.size() / 2];
  const int shard_median = shard_rounds[shard_rounds.size() / 2];
  MESSAGE("median rounds to target: iid=", iid_median, " label-shard=", shard_median);
  CHECK(shard_median >= iid_median);
}

TEST_CASE("centralized learning reliably reaches the reference target") {
  // Spread 0.2 keeps the clusters separable enough that a loss of 0.1 is
  // attainable; at 0.3 the cross-entropy floor sits near 0.4 for most seeds.
  int reached = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Dataset data = make_synthetic_dataset(6, 8, 120, 0.2, 100 + seed);
    const DatasetPartition partition =
        partition_dataset(data.train, 4, PartitionMode::Iid, 1, seed);
    SimOptions options = base_options(Scheme::CL);
    options.target_loss = 0.1;
    options.max_rounds = 200;
    options.seed = seed;
    const TrainingTrace trace = run_training(toy_learner(), data, partition,
                                             Topology::full_mesh(4), {}, options);
    reached += trace.target_reached ? 1 : 0;
  }
  CHECK(reached >= 9);
}

TEST_CASE("a zero-spread task is driven to near-zero loss") {
  const Dataset data = make_synthetic_dataset(4, 6, 60, 0.0, 12);
  const DatasetPartition partition =
      partition_dataset(data.train, 2, PartitionMode::Iid, 1, 12);
  LearnerSpec learner;
  learner.input_dim = 6;
  learner.classes = 4;
  learner.batch_size = 32;
  learner.optimizer.step_size = 0.1;
  SimOptions options = base_options(Scheme::CL);
  options.target_loss = 0.05;
  options.max_rounds = 100;
  const TrainingTrace trace = run_training(learner, data, partition,
                                           Topology::full_mesh(2), {}, options);
  CHECK(trace.target_reached);
}

TEST_CASE("the unnormalized aggregation flag changes the trajectory") {
  const Dataset data = make_synthetic_dataset(6, 8, 60, 0.3, 13);
  const DatasetPartition partition =
      partition_dataset(data.train, 4, PartitionMode::Iid, 1, 13);
  const ActiveSchedule schedule = round_robin_schedule(4, 2, 3);
  SimOptions options = base_options(Scheme::FL);
  options.target_loss = 0.0;
  options.max_rounds = 3;
  const TrainingTrace plain = run_training(toy_learner(), data, partition,
                                           Topology::full_mesh(4), schedule, options);
  options.literal_fedavg = true;
  const TrainingTrace literal = run_training(toy_learner(), data, partition,
                                             Topology::full_mesh(4), schedule, options);
  // Half the shards participate per round, so the unnormalized weights sum
  // to 1/2 and the merged model shrinks; losses must differ.
  CHECK(plain.rounds.back().val_loss != literal.rounds.back().val_loss);
}
