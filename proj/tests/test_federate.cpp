#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "fedcarbon/federate.hpp"
#include "fedcarbon/rng.hpp"

using namespace fedcarbon;

namespace {

ParamVector random_params(size_t dim, CounterRng& rng) {
  ParamVector out(dim);
  for (double& v : out) v = 2.0 * rng.next_unit() - 1.0;
  return out;
}

// max over coordinates of (max - min): the fleet disagreement diameter.
double coordinate_diameter(const std::vector<ParamVector>& models) {
  double worst = 0.0;
  for (size_t i = 0; i < models.front().size(); ++i) {
    double lo = models.front()[i], hi = models.front()[i];
    for (const ParamVector& m : models) {
      lo = std::min(lo, m[i]);
      hi = std::max(hi, m[i]);
    }
    worst = std::max(worst, hi - lo);
  }
  return worst;
}

}  // namespace

TEST_CASE("example-weighted averaging") {
  CHECK(fedavg_aggregate({{{0.0}, 10}, {{2.0}, 10}}) == ParamVector{1.0});
  CHECK(fedavg_aggregate({{{3.5, -1.0}, 4}}) == ParamVector{3.5, -1.0});
  CHECK(fedavg_aggregate({{{0.0}, 1}, {{4.0}, 3}}) == ParamVector{3.0});
  CHECK_THROWS_AS(fedavg_aggregate({}), std::invalid_argument);
  CHECK_THROWS_AS(fedavg_aggregate({{{1.0}, 1}, {{1.0, 2.0}, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(fedavg_aggregate({{{1.0}, 0}, {{2.0}, 0}}), std::invalid_argument);
}

TEST_CASE("the unnormalized variant shrinks when the active set is partial") {
  // Two of four equal-sized shards participate; weights sum to 1/2 * 2/4.
  const ParamVector merged = fedavg_aggregate_literal({{{8.0}, 10}, {{8.0}, 10}}, 40.0);
  CHECK(merged == ParamVector{8.0 * 0.5 * (10.0 / 40.0 + 10.0 / 40.0) * 2.0 * 0.5});
  CHECK(merged[0] == doctest::Approx(2.0));
  // With everyone active and equal shards it reduces to the plain mean / 1.
  const ParamVector full =
      fedavg_aggregate_literal({{{8.0}, 20}, {{8.0}, 20}}, 40.0);
  CHECK(full[0] == doctest::Approx(4.0));
}

TEST_CASE("aggregation stays in the per-coordinate envelope") {
  CounterRng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t dim = 1 + rng.next_below(6);
    const size_t count = 1 + rng.next_below(5);
    std::vector<WeightedModel> models;
    for (size_t m = 0; m < count; ++m)
      models.push_back({random_params(dim, rng), 1.0 + static_cast<double>(rng.next_below(20))});
    const ParamVector merged = fedavg_aggregate(models);
    for (size_t i = 0; i < dim; ++i) {
      double lo = models.front().params[i], hi = lo;
      for (const auto& m : models) {
        lo = std::min(lo, m.params[i]);
        hi = std::max(hi, m.params[i]);
      }
      CHECK(merged[i] >= lo - 1e-12);
      CHECK(merged[i] <= hi + 1e-12);
    }
  }
}

TEST_CASE("equal-weight aggregation is permutation invariant") {
  CounterRng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const size_t dim = 1 + rng.next_below(8);
    std::vector<WeightedModel> models;
    for (int m = 0; m < 5; ++m) models.push_back({random_params(dim, rng), 7.0});
    std::vector<WeightedModel> shuffled = models;
    std::reverse(shuffled.begin(), shuffled.end());
    const ParamVector a = fedavg_aggregate(models);
    const ParamVector b = fedavg_aggregate(shuffled);
    for (size_t i = 0; i < dim; ++i)
      CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
  }
}

TEST_CASE("consensus: all-equal neighborhood is a fixed point") {
  const ParamVector w = {0.3, -1.2, 4.0};
  const ParamVector next = consensus_step({w, 5}, {{w, 3}, {w, 9}}, 2);
  for (size_t i = 0; i < w.size(); ++i)
    CHECK(next[i] == doctest::Approx(w[i]).epsilon(1e-12));
}

TEST_CASE("consensus with one equal-share neighbor returns the neighbor exactly") {
  CounterRng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const size_t dim = 1 + rng.next_below(10);
    const ParamVector own = random_params(dim, rng);
    const ParamVector other = random_params(dim, rng);
    const double q = 1.0 + static_cast<double>(rng.next_below(50));
    const ParamVector next = consensus_step({own, q}, {{other, q}}, 1);
    CHECK(next == other);  // bit-exact
  }
}

TEST_CASE("consensus arithmetic example") {
  // own [2], neighbors [0] and [4], equal shares, fanout 2: weights 1/4 each.
  const ParamVector next = consensus_step({{2.0}, 6}, {{{0.0}, 6}, {{4.0}, 6}}, 2);
  CHECK(next[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("consensus output stays in the local envelope") {
  CounterRng rng(15);
  for (int trial = 0; trial < 1000; ++trial) {
    const size_t dim = 1 + rng.next_below(6);
    const int fanout = 1 + static_cast<int>(rng.next_below(3));
    const int count = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(fanout)));
    WeightedModel own{random_params(dim, rng), 1.0 + static_cast<double>(rng.next_below(9))};
    std::vector<WeightedModel> neighbors;
    for (int m = 0; m < count; ++m)
      neighbors.push_back({random_params(dim, rng), 1.0 + static_cast<double>(rng.next_below(9))});
    const ParamVector next = consensus_step(own, neighbors, fanout);
    for (size_t i = 0; i < dim; ++i) {
      double lo = own.params[i], hi = own.params[i];
      for (const auto& m : neighbors) {
        lo = std::min(lo, m.params[i]);
        hi = std::max(hi, m.params[i]);
      }
      CHECK(next[i] >= lo - 1e-12);
      CHECK(next[i] <= hi + 1e-12);
    }
  }
}

TEST_CASE("repeated full-neighborhood consensus contracts the fleet") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CounterRng rng(4000 + seed);
    const int nodes = 8;
    const size_t dim = 5;
    std::vector<ParamVector> models;
    for (int k = 0; k < nodes; ++k) models.push_back(random_params(dim, rng));

    double diameter = coordinate_diameter(models);
    const double initial = diameter;
    for (int step = 0; step < 50; ++step) {
      std::vector<ParamVector> next(models.size());
      for (int k = 0; k < nodes; ++k) {
        // Both ring neighbors, equal shares, fanout = degree.
        const int left = (k + nodes - 1) % nodes;
        const int right = (k + 1) % nodes;
        next[static_cast<size_t>(k)] = consensus_step(
            {models[static_cast<size_t>(k)], 1.0},
            {{models[static_cast<size_t>(left)], 1.0}, {models[static_cast<size_t>(right)], 1.0}},
            2);
      }
      models = std::move(next);
      const double now = coordinate_diameter(models);
      CHECK(now <= diameter + 1e-12);
      diameter = now;
    }
    CHECK(diameter < 0.5 * initial);
  }
}

TEST_CASE("consensus input validation") {
  CHECK_THROWS_AS(consensus_step({{1.0}, 1}, {}, 1), std::invalid_argument);
  CHECK_THROWS_AS(consensus_step({{1.0}, 1}, {{{1.0, 2.0}, 1}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(consensus_step({{1.0}, 1}, {{{2.0}, 1}, {{3.0}, 1}}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(consensus_step({{1.0}, 1}, {{{2.0}, 0}}, 1), std::invalid_argument);
}
