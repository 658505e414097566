// Copyright 2026 The qst-control Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QST_DQN_HPP_
#define QST_DQN_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qst/environment.hpp"

namespace qst {

/// Fully connected Q-value approximator: rectified-linear hidden layers,
/// identity output, 16 outputs (one per action), input 2N features.
struct ValueNetParams {
  std::vector<int> layer_sizes;            // [input, hidden..., 16]
  std::vector<Eigen::MatrixXd> weights;    // weights[l]: sizes[l+1] x sizes[l]
  std::vector<Eigen::VectorXd> biases;

  int input_size() const { return layer_sizes.front(); }
  int output_size() const { return layer_sizes.back(); }
};

/// Zero-initialized network of the given shape.
inline ValueNetParams make_value_net(const std::vector<int>& layer_sizes) {
  if (layer_sizes.size() < 2)
    throw std::invalid_argument("value net needs at least input and output");
  for (int s : layer_sizes)
    if (s < 1) throw std::invalid_argument("value net layer size must be >= 1");
  ValueNetParams params;
  params.layer_sizes = layer_sizes;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    params.weights.emplace_back(
        Eigen::MatrixXd::Zero(layer_sizes[l + 1], layer_sizes[l]));
    params.biases.emplace_back(Eigen::VectorXd::Zero(layer_sizes[l + 1]));
  }
  return params;
}

/// He-style normal initialization, deterministic under the seed.
inline ValueNetParams make_value_net(const std::vector<int>& layer_sizes,
                                     std::mt19937_64& rng) {
  ValueNetParams params = make_value_net(layer_sizes);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t l = 0; l < params.weights.size(); ++l) {
    const double scale =
        std::sqrt(2.0 / static_cast<double>(params.layer_sizes[l]));
    for (Eigen::Index r = 0; r < params.weights[l].rows(); ++r)
      for (Eigen::Index c = 0; c < params.weights[l].cols(); ++c)
        params.weights[l](r, c) = scale * gauss(rng);
  }
  return params;
}

inline Eigen::VectorXd forward(const ValueNetParams& params,
                               const Eigen::VectorXd& features) {
  if (features.size() != params.input_size())
    throw std::invalid_argument("forward: feature dimension mismatch");
  Eigen::VectorXd activation = features;
  const std::size_t n_layers = params.weights.size();
  for (std::size_t l = 0; l < n_layers; ++l) {
    activation = params.weights[l] * activation + params.biases[l];
    if (l + 1 < n_layers) activation = activation.cwiseMax(0.0);
  }
  return activation;
}

/// With probability epsilon a uniform action, otherwise the argmax of q
/// with ties to the lowest id.
inline int epsilon_greedy(const Eigen::VectorXd& q, double epsilon,
                          std::mt19937_64& rng) {
  if (epsilon < 0.0 || epsilon > 1.0)
    throw std::invalid_argument("epsilon_greedy: epsilon must be in [0,1]");
  if (q.size() != kNumActions)
    throw std::invalid_argument("epsilon_greedy: expected 16 Q-values");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (unit(rng) < epsilon) {
    std::uniform_int_distribution<int> any(0, kNumActions - 1);
    return any(rng);
  }
  int best = 0;
  for (int a = 1; a < kNumActions; ++a)
    if (q(a) > q(best)) best = a;
  return best;
}

struct Transition {
  Eigen::VectorXd features_before;
  int action_id = 0;
  double reward = 0.0;
  Eigen::VectorXd features_after;
  bool done = false;
};

/// Bounded FIFO of transitions; pushing beyond capacity evicts the oldest.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0)
      throw std::invalid_argument("ReplayBuffer: capacity must be >= 1");
    data_.reserve(std::min<std::size_t>(capacity, 1 << 16));
  }

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return data_.size(); }

  void push(Transition t) {
    if (data_.size() < capacity_) {
      data_.push_back(std::move(t));
    } else {
      data_[next_] = std::move(t);
      next_ = (next_ + 1) % capacity_;
    }
  }

  /// i = 0 is the oldest stored transition.
  const Transition& at(std::size_t i) const {
    if (i >= data_.size()) throw std::out_of_range("ReplayBuffer::at");
    return data_[(next_ + i) % data_.size()];
  }

  /// k transitions drawn uniformly (with replacement).
  std::vector<Transition> sample(std::size_t k, std::mt19937_64& rng) const {
    if (data_.empty())
      throw std::logic_error("ReplayBuffer::sample: buffer is empty");
    std::uniform_int_distribution<std::size_t> pick(0, data_.size() - 1);
    std::vector<Transition> batch;
    batch.reserve(k);
    for (std::size_t i = 0; i < k; ++i) batch.push_back(data_[pick(rng)]);
    return batch;
  }

 private:
  std::size_t capacity_;
  std::size_t next_ = 0;  // overwrite position == index of the oldest
  std::vector<Transition> data_;
};

struct DQNConfig {
  double alpha = 1e-4;
  double gamma = 0.95;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  double epsilon_decay = 0.999;
  int batch_size = 32;
  int buffer_capacity = 50000;
  int target_update_period = 100;
  int episodes = 2000;
  std::vector<int> hidden_sizes = {256, 256};
  std::uint64_t seed = 1;

  void validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("DQNConfig: alpha > 0");
    if (gamma < 0.0 || gamma > 1.0)
      throw std::invalid_argument("DQNConfig: gamma in [0,1]");
    if (epsilon_end < 0.0 || epsilon_start > 1.0 ||
        epsilon_end > epsilon_start)
      throw std::invalid_argument(
          "DQNConfig: need 0 <= epsilon_end <= epsilon_start <= 1");
    if (epsilon_decay <= 0.0 || epsilon_decay > 1.0)
      throw std::invalid_argument("DQNConfig: epsilon_decay in (0,1]");
    if (batch_size < 1) throw std::invalid_argument("DQNConfig: batch_size");
    if (buffer_capacity < 1)
      throw std::invalid_argument("DQNConfig: buffer_capacity");
    if (target_update_period < 1)
      throw std::invalid_argument("DQNConfig: target_update_period");
    if (episodes < 0) throw std::invalid_argument("DQNConfig: episodes");
  }

  bool operator==(const DQNConfig&) const = default;
};

/// y = r for terminal transitions, else r + gamma * max_a Q_target(s')[a].
inline std::vector<double> td_targets(const std::vector<Transition>& batch,
                                      const ValueNetParams& target_params,
                                      double gamma) {
  if (batch.empty())
    throw std::invalid_argument("td_targets: batch must be nonempty");
  std::vector<double> targets;
  targets.reserve(batch.size());
  for (const Transition& t : batch) {
    double y = t.reward;
    if (!t.done)
      y += gamma * forward(target_params, t.features_after).maxCoeff();
    targets.push_back(y);
  }
  return targets;
}

struct NetGradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
};

/// Backpropagated gradients of the mean squared error between
/// Q(features_before)[action_id] and the targets. Also reports the loss at
/// the current parameters.
inline NetGradients value_net_gradients(const ValueNetParams& params,
                                        const std::vector<Transition>& batch,
                                        const std::vector<double>& targets,
                                        double* loss_out = nullptr) {
  if (batch.empty() || batch.size() != targets.size())
    throw std::invalid_argument("value_net_gradients: size mismatch");
  const std::size_t n_layers = params.weights.size();
  const Eigen::Index b = static_cast<Eigen::Index>(batch.size());

  // Batch as columns.
  Eigen::MatrixXd input(params.input_size(), b);
  for (Eigen::Index i = 0; i < b; ++i) {
    const Eigen::VectorXd& f = batch[static_cast<std::size_t>(i)].features_before;
    if (f.size() != params.input_size())
      throw std::invalid_argument("value_net_gradients: feature dimension");
    input.col(i) = f;
  }

  std::vector<Eigen::MatrixXd> activations;  // post-activation, per layer
  activations.reserve(n_layers + 1);
  activations.push_back(input);
  for (std::size_t l = 0; l < n_layers; ++l) {
    Eigen::MatrixXd z =
        (params.weights[l] * activations.back()).colwise() + params.biases[l];
    if (l + 1 < n_layers) z = z.cwiseMax(0.0);
    activations.push_back(std::move(z));
  }

  // d(loss)/d(output): nonzero only at each sample's taken action.
  const Eigen::MatrixXd& q = activations.back();
  Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(q.rows(), b);
  double loss = 0.0;
  for (Eigen::Index i = 0; i < b; ++i) {
    const int a = batch[static_cast<std::size_t>(i)].action_id;
    if (a < 0 || a >= kNumActions)
      throw std::invalid_argument("value_net_gradients: bad action id");
    const double err = q(a, i) - targets[static_cast<std::size_t>(i)];
    loss += err * err;
    delta(a, i) = 2.0 * err / static_cast<double>(b);
  }
  loss /= static_cast<double>(b);
  if (loss_out != nullptr) *loss_out = loss;

  NetGradients grads;
  grads.weights.resize(n_layers);
  grads.biases.resize(n_layers);
  for (std::size_t l = n_layers; l-- > 0;) {
    grads.weights[l] = delta * activations[l].transpose();
    grads.biases[l] = delta.rowwise().sum();
    if (l > 0) {
      delta = params.weights[l].transpose() * delta;
      // ReLU mask of the previous layer's post-activation.
      delta = delta.cwiseProduct(
          (activations[l].array() > 0.0).cast<double>().matrix());
    }
  }
  return grads;
}

/// One stochastic gradient step toward the targets; returns the loss
/// evaluated before the step.
inline double train_batch(ValueNetParams& params,
                          const std::vector<Transition>& batch,
                          const std::vector<double>& targets, double alpha) {
  double loss = 0.0;
  const NetGradients grads = value_net_gradients(params, batch, targets, &loss);
  for (std::size_t l = 0; l < params.weights.size(); ++l) {
    params.weights[l] -= alpha * grads.weights[l];
    params.biases[l] -= alpha * grads.biases[l];
  }
  return loss;
}

struct EpisodeRecord {
  int episode = 0;
  double epsilon = 0.0;
  double episode_return = 0.0;
  double best_fidelity = 0.0;  // best over everything executed so far
};

struct TrainResult {
  ValueNetParams params;
  std::vector<int> best_sequence;
  double best_fidelity = 0.0;
  std::vector<EpisodeRecord> history;
};

inline std::vector<int> value_net_layers(const DQNConfig& dqncfg,
                                         int n_sites) {
  std::vector<int> sizes;
  sizes.push_back(2 * n_sites);
  sizes.insert(sizes.end(), dqncfg.hidden_sizes.begin(),
               dqncfg.hidden_sizes.end());
  sizes.push_back(kNumActions);
  return sizes;
}

/// Deep Q-learning over the episodic environment: epsilon-greedy acting
/// with exponential decay per episode, uniform replay batches, one SGD step
/// per environment step, and a target network refreshed every
/// target_update_period gradient steps. The deliverable is the best action
/// sequence ever executed (every prefix counts, judged by the fidelity at
/// its last step, ties to the earliest discovery) - not the greedy policy,
/// which may underperform it.
inline TrainResult train(const DQNConfig& dqncfg, const EpisodeConfig& cfg) {
  dqncfg.validate();
  cfg.validate();
  const PropagatorSet set(cfg.chain);

  std::mt19937_64 rng(dqncfg.seed);
  TrainResult result;
  result.params =
      make_value_net(value_net_layers(dqncfg, cfg.chain.n_sites), rng);
  ValueNetParams target = result.params;

  ReplayBuffer buffer(static_cast<std::size_t>(dqncfg.buffer_capacity));
  const std::size_t batch_size = static_cast<std::size_t>(dqncfg.batch_size);
  long gradient_steps = 0;

  result.history.reserve(static_cast<std::size_t>(dqncfg.episodes));
  for (int episode = 0; episode < dqncfg.episodes; ++episode) {
    const double epsilon =
        std::max(dqncfg.epsilon_end,
                 dqncfg.epsilon_start *
                     std::pow(dqncfg.epsilon_decay, episode));

    EnvState env = reset(cfg);
    Eigen::VectorXd features = featurize(env.state);
    std::vector<int> executed;
    double episode_return = 0.0;

    while (!env.done) {
      const Eigen::VectorXd q = forward(result.params, features);
      const int action = epsilon_greedy(q, epsilon, rng);
      auto [next_env, outcome] = step(env, action, cfg, set);
      executed.push_back(action);
      episode_return += outcome.reward;

      buffer.push(Transition{features, action, outcome.reward,
                             outcome.features, outcome.done});

      if (outcome.fidelity > result.best_fidelity) {
        result.best_fidelity = outcome.fidelity;
        result.best_sequence = executed;
      }

      if (buffer.size() >= batch_size) {
        const std::vector<Transition> batch = buffer.sample(batch_size, rng);
        const std::vector<double> targets =
            td_targets(batch, target, dqncfg.gamma);
        train_batch(result.params, batch, targets, dqncfg.alpha);
        ++gradient_steps;
        if (gradient_steps % dqncfg.target_update_period == 0)
          target = result.params;
      }

      env = std::move(next_env);
      features = std::move(outcome.features);
    }

    result.history.push_back(
        EpisodeRecord{episode, epsilon, episode_return, result.best_fidelity});
  }
  return result;
}

/// One epsilon = 0 episode under the given parameters; returns the executed
/// sequence and its stepwise fidelity profile.
inline std::pair<std::vector<int>, std::vector<std::pair<int, double>>>
greedy_rollout(const ValueNetParams& params, const EpisodeConfig& cfg,
               const PropagatorSet& set) {
  cfg.validate();
  std::mt19937_64 rng(0);  // the random branch is never taken at epsilon 0
  EnvState env = reset(cfg);
  Eigen::VectorXd features = featurize(env.state);
  std::vector<int> executed;
  std::vector<std::pair<int, double>> profile;
  while (!env.done) {
    const int action =
        epsilon_greedy(forward(params, features), 0.0, rng);
    auto [next_env, outcome] = step(env, action, cfg, set);
    executed.push_back(action);
    profile.emplace_back(env.step_index + 1, outcome.fidelity);
    env = std::move(next_env);
    features = std::move(outcome.features);
  }
  return {executed, profile};
}

}  // namespace qst

#endif  // QST_DQN_HPP_
