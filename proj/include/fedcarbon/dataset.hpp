#pragma once

#include <cstdint>
#include <vector>

namespace fedcarbon {

struct Example {
  std::vector<double> x;
  int label = 0;
};

// Labeled synthetic classification task with a global held-out split.
struct Dataset {
  int classes = 0;
  int input_dim = 0;
  std::vector<Example> train;
  std::vector<Example> validation;
};

// Gaussian class clusters: one unit-norm random center per class, shared
// isotropic spread. The 90/10 train/validation split is stratified per
// class so class balance is exact. Deterministic under `seed`.
Dataset make_synthetic_dataset(int classes, int input_dim, int per_class,
                               double spread, std::uint64_t seed);

enum class PartitionMode { Iid, LabelShard };

// Disjoint covering assignment of example indices to devices. Indices refer
// to whatever example list the partition was built from.
struct DatasetPartition {
  PartitionMode mode = PartitionMode::Iid;
  std::vector<std::vector<int>> device_examples;

  int devices() const { return static_cast<int>(device_examples.size()); }
  std::vector<int> sizes() const;
  long long total() const;
};

// iid: shuffled near-equal split. label_shard: sort by label, cut into
// devices*shards_per_device contiguous shards, deal shards_per_device
// shards to each device (shard order shuffled under `seed`) — the classic
// pathological non-IID assignment concentrating few labels per device.
DatasetPartition partition_dataset(const std::vector<Example>& examples, int devices,
                                   PartitionMode mode, int shards_per_device,
                                   std::uint64_t seed);

}  // namespace fedcarbon
