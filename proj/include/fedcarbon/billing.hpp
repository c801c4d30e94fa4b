#pragma once

#include <vector>

#include "fedcarbon/energy.hpp"
#include "fedcarbon/training.hpp"

namespace fedcarbon {

// Per-device activity realized by a simulated run.
struct ActivityCounts {
  std::vector<double> active_rounds;  // rounds in which the device trained
  std::vector<double> mesh_sends;     // mesh transmissions originated
};

ActivityCounts count_activity(const TrainingTrace& trace, int devices);

// Sums the cost of every event one by one through the unit energy
// operations: transmissions at bits/efficiency (downlink weighted by the
// center PUE), compute events as work * round energy of the acting node
// (center compute weighted by PUE). The result carries the same per-node
// ledger shape as the closed forms, so the two routes can be compared
// entry by entry.
EnergyBreakdown bill_events(const std::vector<CostEvent>& events, const FleetSpec& fleet,
                            const LinkEfficiencies& links);

// Relative agreement check between two breakdowns (categories, totals and
// ledgers). Returns an empty string when they agree to `rel_tol`, otherwise
// a description of the first mismatch.
std::string compare_breakdowns(const EnergyBreakdown& a, const EnergyBreakdown& b,
                               double rel_tol);

}  // namespace fedcarbon
