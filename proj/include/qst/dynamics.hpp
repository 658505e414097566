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

#ifndef QST_DYNAMICS_HPP_
#define QST_DYNAMICS_HPP_

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qst/actions.hpp"
#include "qst/chain.hpp"

namespace qst {

// Amplitudes of the single excitation on each site, unit norm.
using QuantumState = Eigen::VectorXcd;
// N x N real symmetric Hamiltonian restricted to the single-excitation
// subspace.
using Hamiltonian = Eigen::MatrixXd;
// N x N unitary advancing the state across one interval.
using Propagator = Eigen::MatrixXcd;

/// Basis state with the excitation on `site` (0-based).
inline QuantumState site_basis_state(int n_sites, int site) {
  if (site < 0 || site >= n_sites)
    throw std::out_of_range("site index out of range");
  QuantumState s = QuantumState::Zero(n_sites);
  s(site) = 1.0;
  return s;
}

/// True when `site` (0-based) carries a field under `action`. The left mask
/// addresses sites 0..2, the right mask sites N-3..N-1; on chains shorter
/// than 6 a site addressed by both ends is on if either bit is set.
inline bool site_is_driven(const ControlAction& action, int site,
                           int n_sites) {
  bool on = false;
  if (site < 3) on = on || action.left_mask[static_cast<std::size_t>(site)];
  const int right_index = site - (n_sites - 3);
  if (right_index >= 0 && right_index < 3)
    on = on || action.right_mask[static_cast<std::size_t>(right_index)];
  return on;
}

/// Single-excitation restriction of the controlled XX Hamiltonian:
/// hopping 2*coupling between nearest neighbours, diagonal 2*B on sites
/// whose control is on. The state-independent part of the sigma^z fields
/// (-B per active site) only contributes a global phase and is dropped;
/// see full_hilbert_oracle for the explicit offset.
inline Hamiltonian reduced_hamiltonian(const ChainConfig& config,
                                       const ControlAction& action) {
  config.validate();
  const int n = config.n_sites;
  Hamiltonian h = Hamiltonian::Zero(n, n);
  const double hop = 2.0 * config.coupling;
  for (int i = 0; i + 1 < n; ++i) {
    h(i, i + 1) = hop;
    h(i + 1, i) = hop;
  }
  for (int k = 0; k < n; ++k) {
    if (site_is_driven(action, k, n)) h(k, k) = 2.0 * config.field_strength;
  }
  return h;
}

/// exp(i*h*t) for symmetric h, via spectral decomposition. The positive
/// exponent is the convention used throughout this library.
inline Propagator hermitian_expm(const Hamiltonian& h, double t) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("hermitian_expm: matrix must be square");
  Eigen::SelfAdjointEigenSolver<Hamiltonian> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error(
        "hermitian_expm: symmetric eigendecomposition failed to converge");
  const Eigen::MatrixXcd vectors =
      solver.eigenvectors().cast<std::complex<double>>();
  Eigen::VectorXcd phases(h.rows());
  for (Eigen::Index j = 0; j < h.rows(); ++j)
    phases(j) = std::polar(1.0, solver.eigenvalues()(j) * t);
  return vectors * phases.asDiagonal() * vectors.adjoint();
}

/// The 16 propagators exp(i*H_a*dt), one per action, for a fixed config.
/// Immutable once built; safe to share across threads.
class PropagatorSet {
 public:
  explicit PropagatorSet(const ChainConfig& config) : config_(config) {
    config.validate();
    const ActionCatalog catalog;
    propagators_.reserve(kNumActions);
    for (int id = 0; id < kNumActions; ++id)
      propagators_.push_back(
          hermitian_expm(reduced_hamiltonian(config, catalog[id]), config.dt));
  }

  const ChainConfig& config() const { return config_; }

  const Propagator& operator[](int action_id) const { return at(action_id); }

  const Propagator& at(int action_id) const {
    if (action_id < 0 || action_id >= kNumActions)
      throw std::out_of_range("action id out of range: " +
                              std::to_string(action_id));
    return propagators_[static_cast<std::size_t>(action_id)];
  }

 private:
  ChainConfig config_;
  std::vector<Propagator> propagators_;
};

inline PropagatorSet build_propagator_set(const ChainConfig& config) {
  return PropagatorSet(config);
}

/// u * s, one interval of evolution.
inline QuantumState apply(const Propagator& u, const QuantumState& s) {
  if (u.cols() != s.size())
    throw std::invalid_argument("apply: dimension mismatch");
  return u * s;
}

/// Trajectory [psi_1, ..., psi_L] obtained by applying seq[j] to the
/// previous state, starting from `initial`.
inline std::vector<QuantumState> evolve_sequence(const PropagatorSet& set,
                                                 const QuantumState& initial,
                                                 const std::vector<int>& seq) {
  std::vector<QuantumState> trajectory;
  trajectory.reserve(seq.size());
  QuantumState current = initial;
  for (int id : seq) {
    current = qst::apply(set.at(id), current);
    trajectory.push_back(current);
  }
  return trajectory;
}

/// |<target, s>|^2.
inline double transition_probability(const QuantumState& s,
                                     const QuantumState& target) {
  if (s.size() != target.size())
    throw std::invalid_argument("transition_probability: dimension mismatch");
  return std::norm(target.dot(s));
}

/// Site-1 -> site-N transfer probability of the uncontrolled chain, sampled
/// at `samples` uniform times on [0, t_max] (endpoints included).
inline std::vector<std::pair<double, double>> natural_evolution(
    const ChainConfig& config, double t_max, int samples) {
  config.validate();
  if (!(t_max > 0.0))
    throw std::invalid_argument("natural_evolution: t_max must be > 0");
  if (samples < 2)
    throw std::invalid_argument("natural_evolution: samples must be >= 2");

  const int n = config.n_sites;
  const ActionCatalog catalog;
  const Hamiltonian h = reduced_hamiltonian(config, catalog[0]);
  Eigen::SelfAdjointEigenSolver<Hamiltonian> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("natural_evolution: eigendecomposition failed");

  // <N| exp(iHt) |1> = sum_m V(N-1,m) V(0,m) e^{i lambda_m t}
  const Eigen::MatrixXd& v = solver.eigenvectors();
  Eigen::VectorXd overlap(n);
  for (int m = 0; m < n; ++m) overlap(m) = v(n - 1, m) * v(0, m);

  std::vector<std::pair<double, double>> series;
  series.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double t = t_max * static_cast<double>(i) /
                     static_cast<double>(samples - 1);
    std::complex<double> amplitude(0.0, 0.0);
    for (int m = 0; m < n; ++m)
      amplitude += overlap(m) * std::polar(1.0, solver.eigenvalues()(m) * t);
    series.emplace_back(t, std::norm(amplitude));
  }
  return series;
}

}  // namespace qst

#endif  // QST_DYNAMICS_HPP_
