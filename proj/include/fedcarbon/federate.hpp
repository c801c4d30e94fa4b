#pragma once

#include <vector>

#include "fedcarbon/learner.hpp"

namespace fedcarbon {

// A model together with the number of examples backing it.
struct WeightedModel {
  ParamVector params;
  double examples = 0.0;
};

// Example-weighted average of the received models, with the weights
// renormalized over the received set so they sum to one.
ParamVector fedavg_aggregate(const std::vector<WeightedModel>& models);

// Aggregation with weights examples_k / total_examples scaled by 1/m over m
// received models. When total_examples exceeds the active sum, the weights
// sum below one and the combined model shrinks toward zero; kept available
// so the two behaviors can be compared side by side.
ParamVector fedavg_aggregate_literal(const std::vector<WeightedModel>& models,
                                     double total_examples);

// One distributed-averaging update of `own` toward its neighbors:
//   result = own + sum_h gamma_h * (W_h - own),
//   gamma_h = Q_h / (fanout * sum_h Q_h)
// so the neighbor weights sum to 1/fanout and the result is a convex
// combination of own and neighbor models. Evaluated in the combination
// form (1 - sum gamma)*own + sum gamma_h*W_h, which is the same update but
// returns the neighbor bit-exactly in the fanout=1 full-replacement case.
// Requires fanout >= number of neighbors passed.
ParamVector consensus_step(const WeightedModel& own,
                           const std::vector<WeightedModel>& neighbors, int fanout);

}  // namespace fedcarbon
