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

#ifndef QST_IO_HPP_
#define QST_IO_HPP_

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qst/actions.hpp"
#include "qst/dqn.hpp"

namespace qst {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Full double precision, 17 significant digits. All file output goes
/// through this so reruns are byte-identical.
inline std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);  // binary keeps \n endings
  if (!out)
    throw std::runtime_error("cannot open for writing: " + path.string());
  return out;
}

/// Time series rows `t,P` under a one-line header.
inline void write_time_series(
    const std::filesystem::path& path,
    const std::vector<std::pair<double, double>>& series) {
  std::ofstream out = open_output(path);
  out << "t,P\n";
  for (const auto& [t, p] : series)
    out << format_double(t) << ',' << format_double(p) << '\n';
}

/// Stepwise fidelity profile serialized on the time axis, t = step * dt.
inline void write_profile(const std::filesystem::path& path,
                          const std::vector<std::pair<int, double>>& profile,
                          double dt) {
  std::vector<std::pair<double, double>> series;
  series.reserve(profile.size());
  for (const auto& [step, fidelity] : profile)
    series.emplace_back(step * dt, fidelity);
  write_time_series(path, series);
}

/// One line of comma-separated action ids.
inline void write_sequence(const std::filesystem::path& path,
                           const std::vector<int>& seq) {
  std::ofstream out = open_output(path);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i > 0) out << ',';
    out << seq[i];
  }
  out << '\n';
}

inline std::vector<int> parse_sequence(const std::string& text) {
  auto trim = [](const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return std::string();
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
  };

  const std::string body = trim(text);
  std::vector<int> seq;
  if (body.empty()) return seq;

  std::string token;
  std::istringstream in(body);
  std::size_t position = 0;
  // getline drops a trailing empty field, so surface it explicitly.
  const bool trailing_comma = body.back() == ',';
  while (std::getline(in, token, ',') || trailing_comma) {
    const std::string trimmed = in ? trim(token) : "";
    ++position;
    std::size_t consumed = 0;
    int id = -1;
    try {
      id = std::stoi(trimmed, &consumed);
    } catch (const std::exception&) {
      throw ParseError("sequence token " + std::to_string(position) +
                       " is not an action id: '" + trimmed + "'");
    }
    if (consumed != trimmed.size() || id < 0 || id >= kNumActions)
      throw ParseError("sequence token " + std::to_string(position) +
                       " is not an action id in [0,15]: '" + trimmed + "'");
    seq.push_back(id);
    if (!in) break;
  }
  return seq;
}

inline std::vector<int> read_sequence(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open sequence file: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_sequence(text.str());
}

/// Self-describing text serialization: layer sizes, then row-major weights
/// and biases per layer, full precision.
inline void save_value_net(const std::filesystem::path& path,
                           const ValueNetParams& params) {
  std::ofstream out = open_output(path);
  out << "qst-valuenet 1\n";
  out << params.layer_sizes.size();
  for (int s : params.layer_sizes) out << ' ' << s;
  out << '\n';
  for (std::size_t l = 0; l < params.weights.size(); ++l) {
    const Eigen::MatrixXd& w = params.weights[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c)
        out << format_double(w(r, c)) << '\n';
    const Eigen::VectorXd& b = params.biases[l];
    for (Eigen::Index r = 0; r < b.size(); ++r)
      out << format_double(b(r)) << '\n';
  }
}

inline ValueNetParams load_value_net(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open value net file: " + path.string());
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != "qst-valuenet" || version != 1)
    throw ParseError("not a qst-valuenet file: " + path.string());
  std::size_t n_sizes = 0;
  in >> n_sizes;
  if (!in || n_sizes < 2 || n_sizes > 64)
    throw ParseError("corrupt value net header: " + path.string());
  std::vector<int> sizes(n_sizes);
  for (auto& s : sizes) in >> s;
  if (!in) throw ParseError("corrupt value net sizes: " + path.string());
  ValueNetParams params = make_value_net(sizes);
  for (std::size_t l = 0; l < params.weights.size(); ++l) {
    Eigen::MatrixXd& w = params.weights[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) in >> w(r, c);
    Eigen::VectorXd& b = params.biases[l];
    for (Eigen::Index r = 0; r < b.size(); ++r) in >> b(r);
  }
  if (!in) throw ParseError("truncated value net file: " + path.string());
  return params;
}

}  // namespace qst

#endif  // QST_IO_HPP_
