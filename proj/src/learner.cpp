#include "fedcarbon/learner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fedcarbon/rng.hpp"

namespace fedcarbon {

namespace {

constexpr double kHuberDelta = 1.0;

double huber(double r) {
  const double a = std::fabs(r);
  return a <= kHuberDelta ? 0.5 * r * r : kHuberDelta * (a - 0.5 * kHuberDelta);
}

double huber_slope(double r) {
  return std::clamp(r, -kHuberDelta, kHuberDelta);
}

void softmax_inplace(std::vector<double>& z) {
  const double zmax = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - zmax);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

// Per-layer views into the flat parameter vector.
struct LayerOffsets {
  std::vector<int> weight;  // start of each weight matrix
  std::vector<int> bias;    // start of each bias vector
  std::vector<int> dims;
  int total = 0;
};

LayerOffsets layout(const LearnerSpec& spec) {
  LayerOffsets off;
  off.dims = spec.layer_dims();
  int cursor = 0;
  for (size_t l = 0; l + 1 < off.dims.size(); ++l) {
    off.weight.push_back(cursor);
    cursor += off.dims[l + 1] * off.dims[l];
    off.bias.push_back(cursor);
    cursor += off.dims[l + 1];
  }
  off.total = cursor;
  return off;
}

// Forward pass keeping activations for the backward pass.
// activations[0] is the input; activations[l+1] the output of layer l
// (tanh for hidden layers, raw logits for the last).
void forward_all(const LayerOffsets& off, const ParamVector& params,
                 const std::vector<double>& input,
                 std::vector<std::vector<double>>& activations) {
  const size_t layers = off.weight.size();
  activations.resize(layers + 1);
  activations[0] = input;
  for (size_t l = 0; l < layers; ++l) {
    const int in = off.dims[l];
    const int out = off.dims[l + 1];
    const double* w = params.data() + off.weight[l];
    const double* b = params.data() + off.bias[l];
    const std::vector<double>& a = activations[l];
    std::vector<double>& z = activations[l + 1];
    z.assign(static_cast<size_t>(out), 0.0);
    for (int r = 0; r < out; ++r) {
      double acc = b[r];
      const double* row = w + static_cast<long>(r) * in;
      for (int c = 0; c < in; ++c) acc += row[c] * a[static_cast<size_t>(c)];
      z[static_cast<size_t>(r)] = acc;
    }
    if (l + 1 < layers)
      for (double& v : z) v = std::tanh(v);
  }
}

// Loss of one example and, if grad != nullptr, its contribution (scaled by
// `scale`) accumulated into the flat gradient.
double example_loss_grad(const LearnerSpec& spec, const LayerOffsets& off,
                         const ParamVector& params, const Example& example,
                         double scale, ParamVector* grad) {
  std::vector<std::vector<double>> acts;
  forward_all(off, params, example.x, acts);

  std::vector<double> probs = acts.back();
  softmax_inplace(probs);
  const int classes = spec.classes;
  const size_t y = static_cast<size_t>(example.label);

  double loss;
  std::vector<double> dlogits(static_cast<size_t>(classes), 0.0);
  if (spec.loss == LossKind::CrossEntropy) {
    loss = -std::log(std::max(probs[y], 1e-300));
    for (int c = 0; c < classes; ++c)
      dlogits[static_cast<size_t>(c)] = probs[static_cast<size_t>(c)] - (static_cast<size_t>(c) == y ? 1.0 : 0.0);
  } else {
    // Elementwise Huber between softmax output and the one-hot target,
    // averaged over classes; gradient goes through the softmax Jacobian.
    loss = 0.0;
    std::vector<double> dprobs(static_cast<size_t>(classes));
    for (int c = 0; c < classes; ++c) {
      const double r = probs[static_cast<size_t>(c)] - (static_cast<size_t>(c) == y ? 1.0 : 0.0);
      loss += huber(r);
      dprobs[static_cast<size_t>(c)] = huber_slope(r) / classes;
    }
    loss /= classes;
    double dot = 0.0;
    for (int c = 0; c < classes; ++c) dot += dprobs[static_cast<size_t>(c)] * probs[static_cast<size_t>(c)];
    for (int c = 0; c < classes; ++c)
      dlogits[static_cast<size_t>(c)] = probs[static_cast<size_t>(c)] * (dprobs[static_cast<size_t>(c)] - dot);
  }

  if (grad) {
    std::vector<double> delta = dlogits;
    for (int l = static_cast<int>(off.weight.size()) - 1; l >= 0; --l) {
      const int in = off.dims[static_cast<size_t>(l)];
      const int out = off.dims[static_cast<size_t>(l) + 1];
      const std::vector<double>& a = acts[static_cast<size_t>(l)];
      double* gw = grad->data() + off.weight[static_cast<size_t>(l)];
      double* gb = grad->data() + off.bias[static_cast<size_t>(l)];
      const double* w = params.data() + off.weight[static_cast<size_t>(l)];
      for (int r = 0; r < out; ++r) {
        const double d = delta[static_cast<size_t>(r)] * scale;
        gb[r] += d;
        double* grow = gw + static_cast<long>(r) * in;
        for (int c = 0; c < in; ++c) grow[c] += d * a[static_cast<size_t>(c)];
      }
      if (l > 0) {
        std::vector<double> prev(static_cast<size_t>(in), 0.0);
        for (int c = 0; c < in; ++c) {
          double acc = 0.0;
          for (int r = 0; r < out; ++r)
            acc += w[static_cast<long>(r) * in + c] * delta[static_cast<size_t>(r)];
          // activations of hidden layers are tanh outputs
          const double t = a[static_cast<size_t>(c)];
          prev[static_cast<size_t>(c)] = acc * (1.0 - t * t);
        }
        delta = std::move(prev);
      }
    }
  }
  return loss;
}

std::vector<int> draw_batch(const std::vector<int>& shard, int batch_size,
                            CounterRng& rng) {
  if (batch_size >= static_cast<int>(shard.size())) return shard;
  std::vector<int> pool = shard;
  for (int i = 0; i < batch_size; ++i) {
    const size_t j = static_cast<size_t>(i) + rng.next_below(pool.size() - static_cast<size_t>(i));
    std::swap(pool[static_cast<size_t>(i)], pool[j]);
  }
  pool.resize(static_cast<size_t>(batch_size));
  return pool;
}

}  // namespace

void LearnerSpec::validate() const {
  if (input_dim < 1) throw std::invalid_argument("learner.input_dim must be >= 1");
  if (classes < 2) throw std::invalid_argument("learner.classes must be >= 2");
  if (batch_size < 1) throw std::invalid_argument("learner.batch_size must be >= 1");
  for (int h : hidden_dims)
    if (h < 1) throw std::invalid_argument("learner.hidden_dims entries must be >= 1");
  if (!(optimizer.step_size > 0.0))
    throw std::invalid_argument("learner.optimizer.step_size must be > 0");
  if (optimizer.kind == OptimizerKind::Adam) {
    if (!(optimizer.beta1 >= 0.0 && optimizer.beta1 < 1.0) ||
        !(optimizer.beta2 >= 0.0 && optimizer.beta2 < 1.0) || !(optimizer.epsilon > 0.0))
      throw std::invalid_argument("learner.optimizer: bad adam parameters");
  }
}

std::vector<int> LearnerSpec::layer_dims() const {
  std::vector<int> dims;
  dims.push_back(input_dim);
  dims.insert(dims.end(), hidden_dims.begin(), hidden_dims.end());
  dims.push_back(classes);
  return dims;
}

int LearnerSpec::param_count() const {
  return layout(*this).total;
}

ParamVector init_params(const LearnerSpec& spec, std::uint64_t seed) {
  spec.validate();
  const LayerOffsets off = layout(spec);
  ParamVector params(static_cast<size_t>(off.total), 0.0);
  CounterRng rng(seed, 0x1417, 0);
  for (size_t l = 0; l + 1 < off.dims.size(); ++l) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(off.dims[l]));
    const int count = off.dims[l + 1] * off.dims[l];
    for (int i = 0; i < count; ++i)
      params[static_cast<size_t>(off.weight[l] + i)] = scale * rng.next_gaussian();
    // biases start at zero
  }
  return params;
}

std::vector<double> forward_logits(const LearnerSpec& spec, const ParamVector& params,
                                   const std::vector<double>& input) {
  const LayerOffsets off = layout(spec);
  if (static_cast<int>(params.size()) != off.total)
    throw std::invalid_argument("forward: parameter vector has wrong length");
  if (static_cast<int>(input.size()) != spec.input_dim)
    throw std::invalid_argument("forward: input has wrong dimension");
  std::vector<std::vector<double>> acts;
  forward_all(off, params, input, acts);
  return acts.back();
}

double batch_loss(const LearnerSpec& spec, const ParamVector& params,
                  const std::vector<Example>& examples, const std::vector<int>& batch,
                  ParamVector* gradient) {
  if (batch.empty()) throw std::invalid_argument("batch_loss: empty batch");
  const LayerOffsets off = layout(spec);
  if (static_cast<int>(params.size()) != off.total)
    throw std::invalid_argument("batch_loss: parameter vector has wrong length");
  if (gradient) gradient->assign(static_cast<size_t>(off.total), 0.0);
  const double scale = 1.0 / static_cast<double>(batch.size());
  double loss = 0.0;
  for (int idx : batch) {
    const Example& example = examples.at(static_cast<size_t>(idx));
    loss += example_loss_grad(spec, off, params, example, scale, gradient);
  }
  return loss * scale;
}

double dataset_loss(const LearnerSpec& spec, const ParamVector& params,
                    const std::vector<Example>& examples) {
  std::vector<int> all(examples.size());
  std::iota(all.begin(), all.end(), 0);
  return batch_loss(spec, params, examples, all, nullptr);
}

double dataset_accuracy(const LearnerSpec& spec, const ParamVector& params,
                        const std::vector<Example>& examples) {
  if (examples.empty()) throw std::invalid_argument("accuracy: empty example list");
  int hits = 0;
  for (const Example& example : examples) {
    const auto logits = forward_logits(spec, params, example.x);
    const int argmax = static_cast<int>(
        std::max_element(logits.begin(), logits.end()) - logits.begin());
    if (argmax == example.label) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(examples.size());
}

LocalTrainResult local_train(ParamVector params, const std::vector<Example>& examples,
                             const std::vector<int>& shard, const LearnerSpec& spec,
                             int batches, std::uint64_t seed) {
  spec.validate();
  if (shard.empty()) throw std::invalid_argument("local_train: empty shard");
  if (batches < 0) throw std::invalid_argument("local_train: batches must be >= 0");

  if (batches == 0) {
    const double loss = batch_loss(spec, params, examples, shard, nullptr);
    return {std::move(params), loss};
  }

  const size_t dim = params.size();
  ParamVector grad(dim, 0.0);
  ParamVector m(dim, 0.0), v(dim, 0.0);  // fresh Adam moments each call
  double loss_sum = 0.0;

  for (int step = 0; step < batches; ++step) {
    CounterRng rng(seed, 0xBA, static_cast<std::uint64_t>(step));
    const std::vector<int> batch = draw_batch(shard, spec.batch_size, rng);
    loss_sum += batch_loss(spec, params, examples, batch, &grad);

    const OptimizerSpec& opt = spec.optimizer;
    if (opt.kind == OptimizerKind::Sgd) {
      for (size_t i = 0; i < dim; ++i) params[i] -= opt.step_size * grad[i];
    } else {
      const double t = static_cast<double>(step + 1);
      const double bc1 = 1.0 - std::pow(opt.beta1, t);
      const double bc2 = 1.0 - std::pow(opt.beta2, t);
      for (size_t i = 0; i < dim; ++i) {
        m[i] = opt.beta1 * m[i] + (1.0 - opt.beta1) * grad[i];
        v[i] = opt.beta2 * v[i] + (1.0 - opt.beta2) * grad[i] * grad[i];
        const double mh = m[i] / bc1;
        const double vh = v[i] / bc2;
        params[i] -= opt.step_size * mh / (std::sqrt(vh) + opt.epsilon);
      }
    }
  }
  return {std::move(params), loss_sum / batches};
}

}  // namespace fedcarbon
