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

#ifndef QST_FULL_HILBERT_HPP_
#define QST_FULL_HILBERT_HPP_

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

#include "qst/dynamics.hpp"

namespace qst {

// Verification oracle: the same dynamics built in the full 2^N-dimensional
// Hilbert space from Pauli tensor products, without the single-excitation
// reduction. Exponential in N, so capped at 8 sites.

inline constexpr int kMaxOracleSites = 8;

inline void check_oracle_size(int n_sites) {
  if (n_sites > kMaxOracleSites)
    throw std::invalid_argument(
        "full Hilbert oracle refused: n_sites = " + std::to_string(n_sites) +
        " exceeds " + std::to_string(kMaxOracleSites) +
        " (2^N construction)");
}

/// Full 2^N x 2^N Hamiltonian. Basis index bit k (site k+1) set means the
/// site is excited. sigma^z of an excited site contributes +B, of an idle
/// site -B, so the restriction to the single-excitation subspace equals
/// reduced_hamiltonian minus the constant sum of the active fields.
inline Eigen::MatrixXd full_hilbert_hamiltonian(const ChainConfig& config,
                                                const ControlAction& action) {
  config.validate();
  check_oracle_size(config.n_sites);
  const int n = config.n_sites;
  const long dim = 1L << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);

  // sigma^x sigma^x + sigma^y sigma^y flips an adjacent (excited, idle)
  // pair with matrix element 2.
  const double hop = 2.0 * config.coupling;
  for (int i = 0; i + 1 < n; ++i) {
    const long mask = (1L << i) | (1L << (i + 1));
    for (long s = 0; s < dim; ++s) {
      const bool bi = (s >> i) & 1;
      const bool bj = (s >> (i + 1)) & 1;
      if (bi != bj) h(s ^ mask, s) += hop;
    }
  }
  for (int k = 0; k < n; ++k) {
    if (!site_is_driven(action, k, n)) continue;
    for (long s = 0; s < dim; ++s)
      h(s, s) += ((s >> k) & 1) ? config.field_strength
                                : -config.field_strength;
  }
  return h;
}

/// exp(i*H_full*t) on the whole 2^N space.
inline Eigen::MatrixXcd full_hilbert_propagator(const ChainConfig& config,
                                                const ControlAction& action,
                                                double t) {
  return hermitian_expm(full_hilbert_hamiltonian(config, action), t);
}

/// Restriction of the full propagator to the single-excitation subspace.
/// Equals exp(-i*t*sum_k B_k) times the reduced propagator, where the sum
/// runs over the active sites (the constant dropped by
/// reduced_hamiltonian).
inline Propagator full_hilbert_oracle(const ChainConfig& config,
                                      const ControlAction& action, double t) {
  const Eigen::MatrixXcd full = full_hilbert_propagator(config, action, t);
  const int n = config.n_sites;
  Propagator restricted(n, n);
  for (int row = 0; row < n; ++row)
    for (int col = 0; col < n; ++col)
      restricted(row, col) = full(1L << row, 1L << col);
  return restricted;
}

}  // namespace qst

#endif  // QST_FULL_HILBERT_HPP_
