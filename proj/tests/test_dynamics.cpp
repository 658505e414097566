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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "qst/dynamics.hpp"
#include "qst/full_hilbert.hpp"
#include "support.hpp"

using namespace qst;
using qst_test::phase_aligned_distance;
using qst_test::unitarity_defect;

namespace {

ChainConfig make_config(int n, double coupling = 1.0, double b = 100.0,
                        double dt = 0.15) {
  ChainConfig cfg;
  cfg.n_sites = n;
  cfg.coupling = coupling;
  cfg.field_strength = b;
  cfg.dt = dt;
  return cfg;
}

}  // namespace

TEST_CASE("action catalog is the canonical 16-element set") {
  const ActionCatalog catalog = build_action_catalog();
  REQUIRE(catalog.size() == 16);

  // id 0 all off, id 15 all on.
  for (bool b : catalog[0].left_mask) REQUIRE_FALSE(b);
  for (bool b : catalog[0].right_mask) REQUIRE_FALSE(b);
  for (bool b : catalog[15].left_mask) REQUIRE(b);
  for (bool b : catalog[15].right_mask) REQUIRE(b);

  // Nonempty one-sided subsets: 2^3 - 1 of each.
  int left_only = 0;
  int right_only = 0;
  for (const ControlAction& a : catalog.actions()) {
    const bool left_any =
        a.left_mask[0] || a.left_mask[1] || a.left_mask[2];
    const bool right_any =
        a.right_mask[0] || a.right_mask[1] || a.right_mask[2];
    if (left_any && !right_any) ++left_only;
    if (right_any && !left_any) ++right_only;
    REQUIRE(a.id == &a - catalog.actions().data());
  }
  REQUIRE(left_only == 7);
  REQUIRE(right_only == 7);

  // All patterns distinct.
  for (int i = 0; i < 16; ++i)
    for (int j = i + 1; j < 16; ++j)
      REQUIRE((catalog[i].left_mask != catalog[j].left_mask ||
               catalog[i].right_mask != catalog[j].right_mask));

  // Binary order, site 1 = least significant bit.
  REQUIRE(catalog[1].left_mask == std::array<bool, 3>{true, false, false});
  REQUIRE(catalog[6].left_mask == std::array<bool, 3>{false, true, true});
  REQUIRE(catalog[8].right_mask == std::array<bool, 3>{true, false, false});
  REQUIRE(catalog[14].right_mask == std::array<bool, 3>{true, true, true});
}

TEST_CASE("reduced hamiltonian: free chain is pure hopping") {
  const ChainConfig cfg = make_config(4);
  const ActionCatalog catalog;
  const Hamiltonian h = reduced_hamiltonian(cfg, catalog[0]);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (std::abs(i - j) == 1)
        REQUIRE(h(i, j) == 2.0 * cfg.coupling);
      else
        REQUIRE(h(i, j) == 0.0);
    }
}

TEST_CASE("reduced hamiltonian matches the full tensor-product restriction") {
  // N=6, B=10, control on site 1 only: diagonal contribution only there,
  // verified against the 2^6 construction (up to its constant offset).
  const ChainConfig cfg = make_config(6, 1.0, 10.0);
  const ActionCatalog catalog;
  const ControlAction& site1 = catalog[1];

  const Hamiltonian reduced = reduced_hamiltonian(cfg, site1);
  REQUIRE(reduced(0, 0) == 2.0 * cfg.field_strength);
  for (int k = 1; k < 6; ++k) REQUIRE(reduced(k, k) == 0.0);

  const Eigen::MatrixXd full = full_hilbert_hamiltonian(cfg, site1);
  // Restriction to single-excitation basis states 2^k differs from the
  // reduced matrix by a multiple of the identity.
  Eigen::MatrixXd restricted(6, 6);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) restricted(r, c) = full(1 << r, 1 << c);
  const double offset = restricted(1, 1) - reduced(1, 1);
  REQUIRE((restricted - reduced -
           offset * Eigen::MatrixXd::Identity(6, 6))
              .cwiseAbs()
              .maxCoeff() < 1e-12);

  // Symmetry for a handful of actions.
  for (int id : {0, 3, 9, 15}) {
    const Hamiltonian h = reduced_hamiltonian(cfg, catalog[id]);
    REQUIRE((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("hermitian_expm basics") {
  SECTION("zero matrix gives the identity") {
    const Propagator u = hermitian_expm(Hamiltonian::Zero(5, 5), 1.7);
    REQUIRE((u - Propagator::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-14);
  }
  SECTION("two-site analytic solution") {
    Hamiltonian h(2, 2);
    h << 0.0, 2.0, 2.0, 0.0;
    for (double t : {0.1, 0.37, 1.0, 2.5}) {
      const Propagator u = hermitian_expm(h, t);
      REQUIRE(std::norm(u(1, 0)) ==
              Catch::Approx(std::sin(2.0 * t) * std::sin(2.0 * t))
                  .margin(1e-12));
      // Positive sign convention: entry is +i sin(2t).
      REQUIRE(u(1, 0).imag() == Catch::Approx(std::sin(2.0 * t)).margin(1e-12));
    }
  }
  SECTION("unitary for random symmetric matrices") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
      Hamiltonian h = Hamiltonian::NullaryExpr(
          8, 8, [&](Eigen::Index, Eigen::Index) { return gauss(rng); });
      h = ((h + h.transpose()) / 2.0).eval();
      REQUIRE(unitarity_defect(hermitian_expm(h, 0.9)) < 1e-10);
    }
  }
  SECTION("composition over time intervals") {
    const ChainConfig cfg = make_config(6);
    const Hamiltonian h =
        reduced_hamiltonian(cfg, build_action_catalog()[5]);
    const Propagator lhs = hermitian_expm(h, 0.7 + 0.4);
    const Propagator rhs = hermitian_expm(h, 0.4) * hermitian_expm(h, 0.7);
    REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("propagator set") {
  SECTION("16 unitaries of the right size") {
    const PropagatorSet set(make_config(4, 1.0, 100.0, 0.1));
    for (int id = 0; id < 16; ++id) {
      REQUIRE(set[id].rows() == 4);
      REQUIRE(set[id].cols() == 4);
      REQUIRE(unitarity_defect(set[id]) < 1e-10);
    }
  }
  SECTION("free step repeated equals natural evolution at multiples of dt") {
    const ChainConfig cfg = make_config(5);
    const PropagatorSet set(cfg);
    const Hamiltonian h = reduced_hamiltonian(cfg, build_action_catalog()[0]);
    Propagator repeated = Propagator::Identity(5, 5);
    for (int k = 0; k < 7; ++k) repeated = set[0] * repeated;
    const Propagator direct = hermitian_expm(h, 7 * cfg.dt);
    REQUIRE((repeated - direct).cwiseAbs().maxCoeff() < 1e-11);
  }
  SECTION("B = 0 makes all actions identical") {
    const PropagatorSet set(make_config(4, 1.0, 0.0));
    for (int id = 1; id < 16; ++id)
      REQUIRE((set[id] - set[0]).cwiseAbs().maxCoeff() < 1e-14);
  }
  SECTION("invalid action id is rejected") {
    const PropagatorSet set(make_config(4));
    REQUIRE_THROWS_AS(set.at(16), std::out_of_range);
    REQUIRE_THROWS_AS(set.at(-1), std::out_of_range);
  }
}

TEST_CASE("apply and evolve_sequence") {
  const ChainConfig cfg = make_config(4);
  const PropagatorSet set(cfg);
  const QuantumState initial = site_basis_state(4, 0);

  SECTION("identity leaves the state alone") {
    const QuantumState out =
        qst::apply(Propagator::Identity(4, 4), initial);
    REQUIRE((out - initial).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("unit norm and reversibility") {
    const QuantumState forward = qst::apply(set[7], initial);
    REQUIRE(std::abs(forward.norm() - 1.0) < 1e-10);
    const QuantumState back = qst::apply(set[7].adjoint(), forward);
    REQUIRE((back - initial).cwiseAbs().maxCoeff() < 1e-9);
  }
  SECTION("dimension mismatch is an error") {
    REQUIRE_THROWS_AS(qst::apply(set[0], site_basis_state(5, 0)),
                      std::invalid_argument);
  }
  SECTION("empty sequence gives an empty trajectory") {
    REQUIRE(evolve_sequence(set, initial, {}).empty());
  }
  SECTION("norms stay at one along a trajectory") {
    std::vector<int> seq;
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> gene(0, 15);
    for (int i = 0; i < 200; ++i) seq.push_back(gene(rng));
    for (const QuantumState& s : evolve_sequence(set, initial, seq))
      REQUIRE(std::abs(s.norm() - 1.0) < 1e-9);
  }
  SECTION("invalid ids are rejected") {
    REQUIRE_THROWS_AS(evolve_sequence(set, initial, {0, 16}),
                      std::out_of_range);
  }
  SECTION("two free steps of dt = pi/8 move the excitation across N = 2") {
    const ChainConfig two = make_config(2, 1.0, 100.0,
                                        std::numbers::pi / 8.0);
    const PropagatorSet two_set(two);
    const auto trajectory =
        evolve_sequence(two_set, site_basis_state(2, 0), {0, 0});
    REQUIRE(trajectory.size() == 2);
    const double p = std::norm(trajectory.back()(1));
    REQUIRE(p == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("transition probability") {
  const QuantumState a = site_basis_state(3, 0);
  const QuantumState b = site_basis_state(3, 2);
  REQUIRE(transition_probability(a, a) == Catch::Approx(1.0).margin(1e-15));
  REQUIRE(transition_probability(a, b) == 0.0);

  SECTION("N = 2 natural evolution reaches 1 at t = pi/4") {
    const Hamiltonian h =
        reduced_hamiltonian(make_config(2), build_action_catalog()[0]);
    const Propagator u = hermitian_expm(h, std::numbers::pi / 4.0);
    const QuantumState evolved = qst::apply(u, site_basis_state(2, 0));
    REQUIRE(transition_probability(evolved, site_basis_state(2, 1)) ==
            Catch::Approx(1.0).margin(1e-12));
  }
  SECTION("invariant under global phases of either argument") {
    const ChainConfig cfg = make_config(4);
    const PropagatorSet set(cfg);
    QuantumState s = qst::apply(set[3], site_basis_state(4, 0));
    const QuantumState target = site_basis_state(4, 3);
    const double reference = transition_probability(s, target);
    const std::complex<double> phase = std::polar(1.0, 1.234);
    REQUIRE(transition_probability(phase * s, target) ==
            Catch::Approx(reference).margin(1e-12));
    REQUIRE(transition_probability(s, phase * target) ==
            Catch::Approx(reference).margin(1e-12));
  }
}

TEST_CASE("natural evolution time series") {
  SECTION("N = 2 reproduces sin^2(2 J t)") {
    const auto series = natural_evolution(make_config(2), 3.0, 500);
    REQUIRE(series.size() == 500);
    for (const auto& [t, p] : series) {
      const double expected = std::sin(2.0 * t) * std::sin(2.0 * t);
      REQUIRE(p == Catch::Approx(expected).margin(1e-9));
    }
  }
  SECTION("starts at zero for orthogonal endpoints") {
    const auto series = natural_evolution(make_config(6), 1.0, 2);
    REQUIRE(series.front().first == 0.0);
    REQUIRE(series.front().second == Catch::Approx(0.0).margin(1e-15));
  }
  SECTION("N = 3 admits perfect transfer") {
    // Max P over a dense grid; the peak sits at t = pi / (2 sqrt(2) J).
    const auto series = natural_evolution(make_config(3), 2.0, 4001);
    double best = 0.0;
    for (const auto& [t, p] : series) best = std::max(best, p);
    REQUIRE(best >= 1.0 - 1e-6);
  }
}

TEST_CASE("full Hilbert oracle agrees with the reduced dynamics") {
  const ActionCatalog catalog;

  SECTION("t = 0 gives the identity") {
    const Propagator u =
        full_hilbert_oracle(make_config(4), catalog[9], 0.0);
    REQUIRE((u - Propagator::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
  }
  SECTION("N = 4, free action, t = 0.3") {
    const ChainConfig cfg = make_config(4);
    const Propagator oracle = full_hilbert_oracle(cfg, catalog[0], 0.3);
    const Propagator reduced =
        hermitian_expm(reduced_hamiltonian(cfg, catalog[0]), 0.3);
    REQUIRE(phase_aligned_distance(oracle, reduced) < 1e-8);
  }
  SECTION("N = 6, all controls on, t = 0.2") {
    const ChainConfig cfg = make_config(6, 1.0, 10.0);
    const Propagator oracle = full_hilbert_oracle(cfg, catalog[15], 0.2);
    const Propagator reduced =
        hermitian_expm(reduced_hamiltonian(cfg, catalog[15]), 0.2);
    REQUIRE(phase_aligned_distance(oracle, reduced) < 1e-8);
  }
  SECTION("all 16 actions for every N up to 6 at several times") {
    // Covers the short chains too, where the left and right masks address
    // overlapping sites.
    for (int n : {2, 3, 4, 5, 6}) {
      const ChainConfig cfg = make_config(n, 1.0, 10.0);
      for (int id = 0; id < 16; ++id) {
        for (double t : {0.05, 0.5, 2.0}) {
          const Propagator oracle =
              full_hilbert_oracle(cfg, catalog[id], t);
          const Propagator reduced = hermitian_expm(
              reduced_hamiltonian(cfg, catalog[id]), t);
          REQUIRE(phase_aligned_distance(oracle, reduced) < 1e-8);
        }
      }
    }
  }
  SECTION("excitation number is conserved") {
    const ChainConfig cfg = make_config(4, 1.0, 10.0);
    for (int id = 0; id < 16; ++id) {
      const Eigen::MatrixXcd full =
          full_hilbert_propagator(cfg, catalog[id], 0.7);
      // Elements between the single-excitation basis states and the rest
      // of the space must vanish.
      for (int k = 0; k < 4; ++k) {
        const long col = 1L << k;
        for (long row = 0; row < full.rows(); ++row) {
          const bool single = (row & (row - 1)) == 0 && row != 0;
          if (!single) {
            REQUIRE(std::abs(full(row, col)) < 1e-10);
            REQUIRE(std::abs(full(col, row)) < 1e-10);
          }
        }
      }
    }
  }
  SECTION("oversized chains are refused") {
    REQUIRE_THROWS_AS(full_hilbert_oracle(make_config(9), catalog[0], 0.1),
                      std::invalid_argument);
  }
  SECTION("random configurations agree too") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> n_pick(2, 7);
    std::uniform_int_distribution<int> action_pick(0, 15);
    std::uniform_real_distribution<double> coupling_pick(0.2, 3.0);
    std::uniform_real_distribution<double> field_pick(0.0, 60.0);
    std::uniform_real_distribution<double> time_pick(0.01, 3.0);
    for (int trial = 0; trial < 25; ++trial) {
      const ChainConfig cfg = make_config(n_pick(rng), coupling_pick(rng),
                                          field_pick(rng));
      const ControlAction& action = catalog[action_pick(rng)];
      const double t = time_pick(rng);
      const Propagator oracle = full_hilbert_oracle(cfg, action, t);
      const Propagator reduced =
          hermitian_expm(reduced_hamiltonian(cfg, action), t);
      REQUIRE(phase_aligned_distance(oracle, reduced) < 1e-8);
    }
  }
}

TEST_CASE("norm drift stays tiny over ten thousand steps") {
  const PropagatorSet set(make_config(8));
  QuantumState state = site_basis_state(8, 0);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> gene(0, 15);
  for (int i = 0; i < 10000; ++i) state = qst::apply(set[gene(rng)], state);
  REQUIRE(std::abs(state.norm() - 1.0) < 1e-8);
}

TEST_CASE("chain config validation") {
  REQUIRE_THROWS_AS(make_config(1).validate(), std::invalid_argument);
  ChainConfig bad_dt = make_config(4);
  bad_dt.dt = 0.0;
  REQUIRE_THROWS_AS(bad_dt.validate(), std::invalid_argument);
  ChainConfig bad_b = make_config(4);
  bad_b.field_strength = -1.0;
  REQUIRE_THROWS_AS(bad_b.validate(), std::invalid_argument);
  ChainConfig bad_j = make_config(4);
  bad_j.coupling = 0.0;
  REQUIRE_THROWS_AS(bad_j.validate(), std::invalid_argument);
}
