#pragma once

#include <cstdint>
#include <vector>

#include "fedcarbon/dataset.hpp"

namespace fedcarbon {

// Flat parameter storage for a small dense classifier. Layout: for each
// layer, the weight matrix row-major (out x in) followed by the bias.
using ParamVector = std::vector<double>;

enum class LossKind { CrossEntropy, HuberOneHot };
enum class OptimizerKind { Adam, Sgd };

struct OptimizerSpec {
  OptimizerKind kind = OptimizerKind::Adam;
  double step_size = 0.05;
  // Adam moments; ignored for plain SGD.
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Dense classifier with tanh hidden layers and a softmax head. An empty
// hidden_dims list is multinomial logistic regression.
struct LearnerSpec {
  int input_dim = 0;
  std::vector<int> hidden_dims;
  int classes = 0;
  LossKind loss = LossKind::CrossEntropy;
  OptimizerSpec optimizer;
  int batch_size = 32;

  void validate() const;
  std::vector<int> layer_dims() const;  // {input, hidden..., classes}
  int param_count() const;
};

// Scaled-normal initialization (std 1/sqrt(fan_in)), deterministic in seed.
ParamVector init_params(const LearnerSpec& spec, std::uint64_t seed);

std::vector<double> forward_logits(const LearnerSpec& spec, const ParamVector& params,
                                   const std::vector<double>& input);

// Mean loss over the index batch; `gradient` (if non-null) receives dloss/dparams.
double batch_loss(const LearnerSpec& spec, const ParamVector& params,
                  const std::vector<Example>& examples, const std::vector<int>& batch,
                  ParamVector* gradient = nullptr);

double dataset_loss(const LearnerSpec& spec, const ParamVector& params,
                    const std::vector<Example>& examples);
double dataset_accuracy(const LearnerSpec& spec, const ParamVector& params,
                        const std::vector<Example>& examples);

struct LocalTrainResult {
  ParamVector params;
  double mean_loss = 0.0;  // mean pre-step mini-batch loss across the steps
};

// Exactly `batches` optimizer steps starting from `params`, on mini-batches
// drawn from `shard` (indices into `examples`). Optimizer state starts fresh
// on every call: activation schedules make devices skip rounds, and moments
// carried across a replaced global model would be stale. With batches == 0
// the params are returned unchanged and the loss is evaluated on the shard.
LocalTrainResult local_train(ParamVector params, const std::vector<Example>& examples,
                             const std::vector<int>& shard, const LearnerSpec& spec,
                             int batches, std::uint64_t seed);

}  // namespace fedcarbon
