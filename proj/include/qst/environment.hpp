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

#ifndef QST_ENVIRONMENT_HPP_
#define QST_ENVIRONMENT_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qst/dynamics.hpp"

namespace qst {

/// Episodic view of the chain: excitation starts on site 1, the target is
/// the excitation on site N, one action is applied per interval.
struct EpisodeConfig {
  ChainConfig chain;
  // 0 selects the default ceil(2.5 * n_sites).
  int horizon = 0;
  double success_threshold = 0.999;
  // With early_stop false the episode only ends at the horizon.
  bool early_stop = true;
  // Per-step reward reward_scale * fidelity^reward_power, plus
  // terminal_bonus when the episode ends at or above success_threshold.
  double reward_scale = 10.0;
  double reward_power = 3.0;
  double terminal_bonus = 2500.0;

  int effective_horizon() const {
    return horizon > 0
               ? horizon
               : static_cast<int>(std::ceil(2.5 * chain.n_sites));
  }

  void validate() const {
    chain.validate();
    if (horizon < 0)
      throw std::invalid_argument("EpisodeConfig: horizon must be >= 0");
    if (!(success_threshold > 0.0) || success_threshold > 1.0)
      throw std::invalid_argument(
          "EpisodeConfig: success_threshold must be in (0,1]");
  }

  bool operator==(const EpisodeConfig&) const = default;
};

struct EnvState {
  QuantumState state;
  int step_index = 0;
  bool done = false;
};

struct StepOutcome {
  Eigen::VectorXd features;  // real parts, then imaginary parts
  double reward = 0.0;
  double fidelity = 0.0;
  bool done = false;
};

/// Lossless featurization: [Re psi_1..N, Im psi_1..N].
inline Eigen::VectorXd featurize(const QuantumState& state) {
  const Eigen::Index n = state.size();
  Eigen::VectorXd features(2 * n);
  features.head(n) = state.real();
  features.tail(n) = state.imag();
  return features;
}

inline EnvState reset(const EpisodeConfig& cfg) {
  cfg.validate();
  return EnvState{site_basis_state(cfg.chain.n_sites, 0), 0, false};
}

inline double reward(double fidelity, bool done, const EpisodeConfig& cfg) {
  double r = cfg.reward_scale * std::pow(fidelity, cfg.reward_power);
  if (done && fidelity >= cfg.success_threshold) r += cfg.terminal_bonus;
  return r;
}

inline std::pair<EnvState, StepOutcome> step(const EnvState& env,
                                             int action_id,
                                             const EpisodeConfig& cfg,
                                             const PropagatorSet& set) {
  if (env.done)
    throw std::logic_error("step: episode is already done");

  EnvState next;
  next.state = qst::apply(set.at(action_id), env.state);
  next.step_index = env.step_index + 1;

  const double fidelity = std::norm(next.state(cfg.chain.n_sites - 1));
  next.done = next.step_index >= cfg.effective_horizon() ||
              (cfg.early_stop && fidelity >= cfg.success_threshold);

  StepOutcome outcome;
  outcome.features = featurize(next.state);
  outcome.fidelity = fidelity;
  outcome.done = next.done;
  outcome.reward = reward(fidelity, next.done, cfg);
  return {std::move(next), std::move(outcome)};
}

/// Fidelity after each prefix of `seq`, as (step, fidelity) with 1-based
/// steps. Shared by replay, compare and the GA fitness.
inline std::vector<std::pair<int, double>> sequence_fidelity_profile(
    const std::vector<int>& seq, const EpisodeConfig& cfg,
    const PropagatorSet& set) {
  cfg.validate();
  if (seq.size() > static_cast<std::size_t>(cfg.effective_horizon()))
    throw std::invalid_argument(
        "sequence_fidelity_profile: sequence longer than the horizon");
  const int n = cfg.chain.n_sites;
  QuantumState state = site_basis_state(n, 0);
  std::vector<std::pair<int, double>> profile;
  profile.reserve(seq.size());
  int j = 0;
  for (int id : seq) {
    state = qst::apply(set.at(id), state);
    profile.emplace_back(++j, std::norm(state(n - 1)));
  }
  return profile;
}

}  // namespace qst

#endif  // QST_ENVIRONMENT_HPP_
