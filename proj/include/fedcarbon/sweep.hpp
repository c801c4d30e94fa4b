#pragma once

#include <vector>

#include "fedcarbon/config.hpp"
#include "fedcarbon/results.hpp"

namespace fedcarbon {

// Closed-form evaluation of the config (fixed-rounds mode) over the
// cartesian grid of its sweep axes; an empty sweep is a single point.
// Rows come out in grid order (first axis slowest, schemes innermost in
// config order), deterministically.
std::vector<ResultRow> run_analysis(const ExperimentConfig& config);
std::vector<ResultRow> run_analysis(const ExperimentConfig& config,
                                    const std::vector<SweepAxis>& axes);

// A config with one sweep point applied; throws ConfigError when the value
// is out of range for the parameter.
ExperimentConfig apply_sweep_value(const ExperimentConfig& config,
                                   const std::string& param, double value);

// Closed-form rows for one fully-resolved config point, one per scheme.
std::vector<ResultRow> evaluate_point(const ExperimentConfig& config);

}  // namespace fedcarbon
