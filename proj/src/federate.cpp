#include "fedcarbon/federate.hpp"

#include <cmath>
#include <stdexcept>

namespace fedcarbon {

namespace {

void check_models(const std::vector<WeightedModel>& models) {
  if (models.empty()) throw std::invalid_argument("aggregate: no models given");
  const size_t dim = models.front().params.size();
  for (const WeightedModel& model : models) {
    if (model.params.size() != dim)
      throw std::invalid_argument("aggregate: model dimension mismatch");
    if (!(std::isfinite(model.examples) && model.examples >= 0.0))
      throw std::invalid_argument("aggregate: example counts must be >= 0");
  }
}

ParamVector weighted_sum(const std::vector<WeightedModel>& models,
                         const std::vector<double>& weights, double own_weight,
                         const ParamVector* own) {
  const size_t dim = own ? own->size() : models.front().params.size();
  ParamVector out(dim, 0.0);
  if (own)
    for (size_t i = 0; i < dim; ++i) out[i] = own_weight * (*own)[i];
  for (size_t m = 0; m < models.size(); ++m) {
    const double w = weights[m];
    const ParamVector& p = models[m].params;
    for (size_t i = 0; i < dim; ++i) out[i] += w * p[i];
  }
  return out;
}

}  // namespace

ParamVector fedavg_aggregate(const std::vector<WeightedModel>& models) {
  check_models(models);
  double total = 0.0;
  for (const WeightedModel& model : models) total += model.examples;
  if (!(total > 0.0))
    throw std::invalid_argument("fedavg_aggregate: total example count must be > 0");
  std::vector<double> weights;
  weights.reserve(models.size());
  for (const WeightedModel& model : models) weights.push_back(model.examples / total);
  return weighted_sum(models, weights, 0.0, nullptr);
}

ParamVector fedavg_aggregate_literal(const std::vector<WeightedModel>& models,
                                     double total_examples) {
  check_models(models);
  if (!(total_examples > 0.0))
    throw std::invalid_argument("fedavg_aggregate_literal: total_examples must be > 0");
  const double inv_m = 1.0 / static_cast<double>(models.size());
  std::vector<double> weights;
  weights.reserve(models.size());
  for (const WeightedModel& model : models)
    weights.push_back(inv_m * (model.examples / total_examples));
  return weighted_sum(models, weights, 0.0, nullptr);
}

ParamVector consensus_step(const WeightedModel& own,
                           const std::vector<WeightedModel>& neighbors, int fanout) {
  check_models(neighbors);
  for (const WeightedModel& neighbor : neighbors)
    if (neighbor.params.size() != own.params.size())
      throw std::invalid_argument("consensus_step: model dimension mismatch");
  if (fanout < static_cast<int>(neighbors.size()))
    throw std::invalid_argument("consensus_step: fanout below actual neighbor count");

  double q_sum = 0.0;
  for (const WeightedModel& neighbor : neighbors) q_sum += neighbor.examples;
  if (!(q_sum > 0.0))
    throw std::invalid_argument("consensus_step: neighbor example counts sum to 0");

  std::vector<double> gamma;
  gamma.reserve(neighbors.size());
  double gamma_sum = 0.0;
  for (const WeightedModel& neighbor : neighbors) {
    const double g = neighbor.examples / (fanout * q_sum);
    gamma.push_back(g);
    gamma_sum += g;
  }
  return weighted_sum(neighbors, gamma, 1.0 - gamma_sum, &own.params);
}

}  // namespace fedcarbon
