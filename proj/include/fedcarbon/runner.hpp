#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fedcarbon/config.hpp"
#include "fedcarbon/results.hpp"
#include "fedcarbon/training.hpp"

namespace fedcarbon {

struct SimulationOutcome {
  std::vector<ResultRow> rows;      // one per scheme, config order
  std::vector<TrainingTrace> traces;
};

// Learning-coupled footprint run: trains each scheme to the loss target,
// bills every logged event through the unit energy operations, and checks
// the sum against the closed forms evaluated at the measured round count
// (with the realized per-device activity). A disagreement beyond 1e-9
// relative throws OracleError — it would mean the two cost routes diverged.
SimulationOutcome run_simulation(const ExperimentConfig& config);

// Carbon of a scheme as a function of a joint link efficiency EE (uplink =
// downlink = EE, mesh composed) is comm_coeff/EE + base. The crossover of
// two schemes is where their curves meet.
struct BreakEvenResult {
  double comm_coeff_a = 0.0;  // gCO2-eq * (bit/J)
  double base_a = 0.0;        // gCO2-eq
  double comm_coeff_b = 0.0;
  double base_b = 0.0;
  std::optional<double> ee_star;  // positive finite crossover, if any
  bool bisection_verified = false;
};

// Extracts both affine forms from the closed forms (two-point evaluation in
// 1/EE, residual-checked at a third point) and solves for the crossover;
// any positive finite solution is re-verified by bisecting the black-box
// carbon difference to 1e-6 relative.
BreakEvenResult break_even_ee(const ExperimentConfig& config, Scheme scheme_a,
                              Scheme scheme_b, long long n_a, long long n_b);

// Closed-form pure solver for carbon curves a/EE + b: crossover of
// (comm_a, base_a) vs (comm_b, base_b), or nullopt when none is positive
// and finite.
std::optional<double> solve_break_even(double comm_a, double base_a, double comm_b,
                                       double base_b);

// JSON-lines event log: one record per event
//   {"scheme":..,"round":..,"kind":"compute|ul|dl|mesh","src":..,"dst":..,
//    "bits":..} (compute records carry "work" instead of bits/dst).
void write_event_log(const std::vector<TrainingTrace>& traces, const std::string& path);

}  // namespace fedcarbon
