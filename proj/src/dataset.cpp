#include "fedcarbon/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fedcarbon/rng.hpp"

namespace fedcarbon {

namespace {

void shuffle_indices(std::vector<int>& indices, CounterRng& rng) {
  for (size_t i = indices.size(); i > 1; --i) {
    const size_t j = rng.next_below(i);
    std::swap(indices[i - 1], indices[j]);
  }
}

}  // namespace

Dataset make_synthetic_dataset(int classes, int input_dim, int per_class,
                               double spread, std::uint64_t seed) {
  if (classes < 2) throw std::invalid_argument("synthetic dataset: classes must be >= 2");
  if (input_dim < 1) throw std::invalid_argument("synthetic dataset: input_dim must be >= 1");
  if (per_class < 1) throw std::invalid_argument("synthetic dataset: per_class must be >= 1");
  if (!(std::isfinite(spread) && spread >= 0.0))
    throw std::invalid_argument("synthetic dataset: spread must be >= 0");

  // Unit-norm random center per class.
  std::vector<std::vector<double>> centers(static_cast<size_t>(classes));
  CounterRng center_rng(seed, 0xCE, 0);
  for (auto& center : centers) {
    center.resize(static_cast<size_t>(input_dim));
    double norm2 = 0.0;
    for (double& v : center) {
      v = center_rng.next_gaussian();
      norm2 += v * v;
    }
    const double norm = std::sqrt(norm2);
    if (norm > 0.0)
      for (double& v : center) v /= norm;
    else
      center[0] = 1.0;
  }

  Dataset data;
  data.classes = classes;
  data.input_dim = input_dim;

  // Per-class validation share: 10%, at least one example when the class
  // has two or more, never the whole class.
  const int val_per_class = per_class >= 10 ? per_class / 10 : (per_class >= 2 ? 1 : 0);

  for (int c = 0; c < classes; ++c) {
    CounterRng sample_rng(seed, 0x5A, static_cast<std::uint64_t>(c));
    std::vector<Example> members(static_cast<size_t>(per_class));
    for (auto& example : members) {
      example.label = c;
      example.x.resize(static_cast<size_t>(input_dim));
      for (int d = 0; d < input_dim; ++d)
        example.x[static_cast<size_t>(d)] =
            centers[static_cast<size_t>(c)][static_cast<size_t>(d)] +
            spread * sample_rng.next_gaussian();
    }
    std::vector<int> order(members.size());
    std::iota(order.begin(), order.end(), 0);
    CounterRng split_rng(seed, 0x51, static_cast<std::uint64_t>(c));
    shuffle_indices(order, split_rng);
    for (size_t i = 0; i < order.size(); ++i) {
      auto& bucket = i < static_cast<size_t>(val_per_class) ? data.validation : data.train;
      bucket.push_back(std::move(members[static_cast<size_t>(order[i])]));
    }
  }

  // Break the class-sorted order of both splits.
  for (int which = 0; which < 2; ++which) {
    auto& bucket = which == 0 ? data.train : data.validation;
    std::vector<int> order(bucket.size());
    std::iota(order.begin(), order.end(), 0);
    CounterRng rng(seed, 0x0D, static_cast<std::uint64_t>(which));
    shuffle_indices(order, rng);
    std::vector<Example> shuffled;
    shuffled.reserve(bucket.size());
    for (int idx : order) shuffled.push_back(std::move(bucket[static_cast<size_t>(idx)]));
    bucket = std::move(shuffled);
  }
  return data;
}

std::vector<int> DatasetPartition::sizes() const {
  std::vector<int> out;
  out.reserve(device_examples.size());
  for (const auto& shard : device_examples) out.push_back(static_cast<int>(shard.size()));
  return out;
}

long long DatasetPartition::total() const {
  long long sum = 0;
  for (const auto& shard : device_examples) sum += static_cast<long long>(shard.size());
  return sum;
}

DatasetPartition partition_dataset(const std::vector<Example>& examples, int devices,
                                   PartitionMode mode, int shards_per_device,
                                   std::uint64_t seed) {
  if (devices < 1) throw std::invalid_argument("partition: devices must be >= 1");
  if (examples.size() < static_cast<size_t>(devices))
    throw std::invalid_argument("partition: fewer examples than devices");

  const int n = static_cast<int>(examples.size());
  DatasetPartition partition;
  partition.mode = mode;
  partition.device_examples.assign(static_cast<size_t>(devices), {});

  if (mode == PartitionMode::Iid) {
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    CounterRng rng(seed, 0x11D, 0);
    shuffle_indices(order, rng);
    // Near-equal contiguous chunks; the first n % devices get one extra.
    const int base = n / devices;
    const int extra = n % devices;
    int cursor = 0;
    for (int k = 0; k < devices; ++k) {
      const int size = base + (k < extra ? 1 : 0);
      auto& shard = partition.device_examples[static_cast<size_t>(k)];
      shard.assign(order.begin() + cursor, order.begin() + cursor + size);
      std::sort(shard.begin(), shard.end());
      cursor += size;
    }
    return partition;
  }

  if (shards_per_device < 1)
    throw std::invalid_argument("partition: shards_per_device must be >= 1");
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return examples[static_cast<size_t>(a)].label < examples[static_cast<size_t>(b)].label;
  });

  const int shard_count = devices * shards_per_device;
  if (shard_count > n)
    throw std::invalid_argument("partition: more shards than examples");
  std::vector<int> shard_order(static_cast<size_t>(shard_count));
  std::iota(shard_order.begin(), shard_order.end(), 0);
  CounterRng rng(seed, 0x5D, 0);
  shuffle_indices(shard_order, rng);

  const int base = n / shard_count;
  const int extra = n % shard_count;
  std::vector<std::pair<int, int>> shard_bounds;  // [begin, end) into `order`
  shard_bounds.reserve(static_cast<size_t>(shard_count));
  int cursor = 0;
  for (int s = 0; s < shard_count; ++s) {
    const int size = base + (s < extra ? 1 : 0);
    shard_bounds.emplace_back(cursor, cursor + size);
    cursor += size;
  }

  for (int k = 0; k < devices; ++k) {
    auto& shard = partition.device_examples[static_cast<size_t>(k)];
    for (int s = 0; s < shards_per_device; ++s) {
      const auto [begin, end] = shard_bounds[static_cast<size_t>(
          shard_order[static_cast<size_t>(k * shards_per_device + s)])];
      for (int i = begin; i < end; ++i) shard.push_back(order[static_cast<size_t>(i)]);
    }
    std::sort(shard.begin(), shard.end());
  }
  return partition;
}

}  // namespace fedcarbon
