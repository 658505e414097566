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

// Shared helpers for the unit and acceptance suites.

#ifndef QST_TESTS_SUPPORT_HPP_
#define QST_TESTS_SUPPORT_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qst/dqn.hpp"

namespace qst_test {

/// Max entrywise |a*e^{i phi} - b| after aligning the global phase of a to
/// b (Frobenius inner product gives the optimal phi).
inline double phase_aligned_distance(const Eigen::MatrixXcd& a,
                                     const Eigen::MatrixXcd& b) {
  const std::complex<double> inner = a.conjugate().cwiseProduct(b).sum();
  const double magnitude = std::abs(inner);
  const std::complex<double> phase =
      magnitude > 0.0 ? inner / magnitude : std::complex<double>(1.0, 0.0);
  return ((a * phase) - b).cwiseAbs().maxCoeff();
}

inline double unitarity_defect(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd gram = u.adjoint() * u;
  return (gram - Eigen::MatrixXcd::Identity(u.rows(), u.cols()))
      .cwiseAbs()
      .maxCoeff();
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

/// A batch of synthetic transitions with features in [-1, 1].
inline std::vector<qst::Transition> random_batch(int feature_dim, int size,
                                                 std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_int_distribution<int> action(0, 15);
  std::vector<qst::Transition> batch;
  for (int i = 0; i < size; ++i) {
    qst::Transition t;
    t.features_before = Eigen::VectorXd::NullaryExpr(
        feature_dim, [&](Eigen::Index) { return unit(rng); });
    t.features_after = Eigen::VectorXd::NullaryExpr(
        feature_dim, [&](Eigen::Index) { return unit(rng); });
    t.action_id = action(rng);
    t.reward = unit(rng);
    t.done = (i % 3 == 0);
    batch.push_back(std::move(t));
  }
  return batch;
}

/// Loss evaluated through forward() only: the independent side of the
/// gradient check.
inline double mse_loss(const qst::ValueNetParams& params,
                       const std::vector<qst::Transition>& batch,
                       const std::vector<double>& targets) {
  double loss = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const double q =
        qst::forward(params, batch[i].features_before)(batch[i].action_id);
    loss += (q - targets[i]) * (q - targets[i]);
  }
  return loss / static_cast<double>(batch.size());
}

/// Worst relative disagreement between backprop and central finite
/// differences over every weight and bias (relative scale floored at 1e-3
/// so near-zero gradients are compared absolutely).
inline double max_gradient_error(qst::ValueNetParams params,
                                 const std::vector<qst::Transition>& batch,
                                 const std::vector<double>& targets,
                                 double h) {
  const qst::NetGradients grads =
      qst::value_net_gradients(params, batch, targets);
  double worst = 0.0;
  auto probe = [&](double& slot, double analytic) {
    const double saved = slot;
    slot = saved + h;
    const double up = mse_loss(params, batch, targets);
    slot = saved - h;
    const double down = mse_loss(params, batch, targets);
    slot = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double scale =
        std::max({1e-3, std::abs(analytic), std::abs(numeric)});
    worst = std::max(worst, std::abs(analytic - numeric) / scale);
  };
  for (std::size_t l = 0; l < params.weights.size(); ++l) {
    for (Eigen::Index r = 0; r < params.weights[l].rows(); ++r)
      for (Eigen::Index c = 0; c < params.weights[l].cols(); ++c)
        probe(params.weights[l](r, c), grads.weights[l](r, c));
    for (Eigen::Index r = 0; r < params.biases[l].size(); ++r)
      probe(params.biases[l](r), grads.biases[l](r));
  }
  return worst;
}

/// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("qst_" + tag + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace qst_test

#endif  // QST_TESTS_SUPPORT_HPP_
