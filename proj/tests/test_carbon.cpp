#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fedcarbon/carbon.hpp"
#include "fedcarbon/rng.hpp"

using namespace fedcarbon;

namespace {

EnergyBreakdown single_center_breakdown(double joules) {
  EnergyBreakdown b;
  b.compute_center_j = joules;
  b.per_node.push_back({Role::Center, -1, CostKind::Compute, joules});
  return b;
}

}  // namespace

TEST_CASE("joules convert through kWh and region intensity") {
  // 72455.91 J on the Italian grid
  const double grams = joules_to_grams_co2(72455.91, 0.28);
  CHECK(grams == doctest::Approx(5.635459666666667).epsilon(1e-12));
  CHECK(joules_to_grams_co2(0.0, 0.97) == 0.0);
  CHECK(joules_to_grams_co2(3.6e6, 1.0) == doctest::Approx(1000.0).epsilon(1e-12));
}

TEST_CASE("carbon report splits communication and compute by owner region") {
  EnergyBreakdown b;
  b.compute_center_j = 1000.0;
  b.comm_up_j = 500.0;
  b.per_node.push_back({Role::Center, -1, CostKind::Compute, 1000.0});
  b.per_node.push_back({Role::Device, 0, CostKind::Uplink, 200.0});
  b.per_node.push_back({Role::Device, 1, CostKind::Uplink, 300.0});

  CarbonIntensityMap map;
  map.ci_center = 0.28;
  map.ci_device = {0.11, 0.97};
  const CarbonReport report = carbon_of(b, map);
  const double expected_compute = joules_to_grams_co2(1000.0, 0.28);
  const double expected_comm =
      joules_to_grams_co2(200.0, 0.11) + joules_to_grams_co2(300.0, 0.97);
  CHECK(report.compute_g == doctest::Approx(expected_compute).epsilon(1e-12));
  CHECK(report.comm_g == doctest::Approx(expected_comm).epsilon(1e-12));
  CHECK(report.total_g == doctest::Approx(expected_comm + expected_compute).epsilon(1e-12));
  CHECK(report.per_node.size() == 3);
}

TEST_CASE("an energy split half/half across two regions bills linearly") {
  const double joules = 9000.0;
  EnergyBreakdown b;
  b.comm_up_j = joules;
  b.per_node.push_back({Role::Device, 0, CostKind::Uplink, joules / 2});
  b.per_node.push_back({Role::Device, 1, CostKind::Uplink, joules / 2});
  CarbonIntensityMap map;
  map.ci_center = 1.0;
  map.ci_device = {0.11, 0.97};
  const CarbonReport report = carbon_of(b, map);
  CHECK(report.total_g ==
        doctest::Approx(0.5 * joules * (0.11 + 0.97) / 3.6e6 * 1000.0).epsilon(1e-12));
}

TEST_CASE("zero or negative intensities are rejected") {
  const EnergyBreakdown b = single_center_breakdown(100.0);
  CarbonIntensityMap map = CarbonIntensityMap::uniform(0.0, 0);
  CHECK_THROWS_AS(carbon_of(b, map), std::invalid_argument);
  map.ci_center = -0.1;
  CHECK_THROWS_AS(carbon_of(b, map), std::invalid_argument);
}

TEST_CASE("a device outside the intensity map is an error") {
  EnergyBreakdown b;
  b.comm_up_j = 10.0;
  b.per_node.push_back({Role::Device, 5, CostKind::Uplink, 10.0});
  const CarbonIntensityMap map = CarbonIntensityMap::uniform(0.28, 3);
  CHECK_THROWS_AS(carbon_of(b, map), std::out_of_range);
}

TEST_CASE("scaling every intensity scales every report field") {
  CounterRng rng(5150);
  for (int trial = 0; trial < 50; ++trial) {
    EnergyBreakdown b;
    const int devices = 1 + static_cast<int>(rng.next_below(8));
    CarbonIntensityMap map;
    map.ci_center = 0.1 + rng.next_unit();
    for (int k = 0; k < devices; ++k) {
      map.ci_device.push_back(0.1 + rng.next_unit());
      const double up = 1000.0 * rng.next_unit();
      const double compute = 1000.0 * rng.next_unit();
      b.comm_up_j += up;
      b.compute_device_j += compute;
      b.per_node.push_back({Role::Device, k, CostKind::Uplink, up});
      b.per_node.push_back({Role::Device, k, CostKind::Compute, compute});
    }
    b.compute_center_j = 500.0 * rng.next_unit();
    b.per_node.push_back({Role::Center, -1, CostKind::Compute, b.compute_center_j});

    const double alpha = 0.25 + 3.0 * rng.next_unit();
    CarbonIntensityMap scaled = map;
    scaled.ci_center *= alpha;
    for (double& ci : scaled.ci_device) ci *= alpha;

    const CarbonReport base = carbon_of(b, map);
    const CarbonReport bumped = carbon_of(b, scaled);
    CHECK(bumped.total_g == doctest::Approx(alpha * base.total_g).epsilon(1e-12));
    CHECK(bumped.comm_g == doctest::Approx(alpha * base.comm_g).epsilon(1e-12));
    CHECK(bumped.compute_g == doctest::Approx(alpha * base.compute_g).epsilon(1e-12));
  }
}

TEST_CASE("yearly emissions from the retraining cadence") {
  CHECK(annualize_kg_per_year(2.9, 3.0) == doctest::Approx(8.468).epsilon(1e-12));
  CHECK(annualize_kg_per_year(1.7, 3.0) == doctest::Approx(4.964).epsilon(1e-12));
  CHECK(annualize_kg_per_year(0.0, 12.0) == 0.0);
  CHECK_THROWS_AS(annualize_kg_per_year(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(annualize_kg_per_year(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("region presets") {
  CHECK(carbon_preset("max-EU") == 0.97);
  CHECK(carbon_preset("IT") == 0.28);
  CHECK(carbon_preset("FI") == 0.11);
  CHECK(!carbon_preset("DE").has_value());
}
