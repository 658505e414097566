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

#ifndef QST_CONFIG_HPP_
#define QST_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qst/dqn.hpp"
#include "qst/environment.hpp"
#include "qst/ga.hpp"
#include "qst/io.hpp"

namespace qst {

/// Everything one run needs. The single master seed feeds every stochastic
/// component; per-section seeds are not part of the file format.
struct RunConfig {
  EpisodeConfig episode;  // includes the chain
  GAConfig ga;
  DQNConfig dqn;
  std::string output_dir = "out";
  std::uint64_t seed = 12345;

  ChainConfig& chain() { return episode.chain; }
  const ChainConfig& chain() const { return episode.chain; }

  void propagate_seed() {
    ga.seed = seed;
    dqn.seed = seed;
  }

  void validate() const {
    episode.validate();
    ga.validate();
    dqn.validate();
    if (chain().n_sites < 4)
      throw std::invalid_argument(
          "RunConfig: n_sites must be >= 4 for the 6-site control layout");
  }

  bool operator==(const RunConfig&) const = default;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline double parse_double(const std::string& v, const std::string& key) {
  std::size_t consumed = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &consumed);
  } catch (const std::exception&) {
    throw ParseError("config: bad number for " + key + ": '" + v + "'");
  }
  if (consumed != v.size())
    throw ParseError("config: bad number for " + key + ": '" + v + "'");
  return out;
}

inline long parse_int(const std::string& v, const std::string& key) {
  std::size_t consumed = 0;
  long out = 0;
  try {
    out = std::stol(v, &consumed);
  } catch (const std::exception&) {
    throw ParseError("config: bad integer for " + key + ": '" + v + "'");
  }
  if (consumed != v.size())
    throw ParseError("config: bad integer for " + key + ": '" + v + "'");
  return out;
}

inline bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ParseError("config: expected true/false for " + key + ": '" + v +
                   "'");
}

inline std::vector<int> parse_int_list(const std::string& v,
                                       const std::string& key) {
  std::vector<int> out;
  std::string token;
  std::istringstream in(v);
  while (std::getline(in, token, ','))
    out.push_back(static_cast<int>(parse_int(trim(token), key)));
  return out;
}

inline std::string join_int_list(const std::vector<int>& values) {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out << ',';
    out << values[i];
  }
  return out.str();
}

}  // namespace detail

inline RunConfig parse_run_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError("config line " + std::to_string(line_no) +
                         ": unterminated section header");
      section = detail::trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(line_no) +
                       ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    const std::string qualified = section + "." + key;

    using detail::parse_bool;
    using detail::parse_double;
    using detail::parse_int;
    using detail::parse_int_list;

    if (qualified == "run.seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(value, qualified));
    } else if (qualified == "run.output_dir") {
      cfg.output_dir = value;
    } else if (qualified == "chain.n_sites") {
      cfg.chain().n_sites = static_cast<int>(parse_int(value, qualified));
    } else if (qualified == "chain.coupling") {
      cfg.chain().coupling = parse_double(value, qualified);
    } else if (qualified == "chain.field_strength") {
      cfg.chain().field_strength = parse_double(value, qualified);
    } else if (qualified == "chain.dt") {
      cfg.chain().dt = parse_double(value, qualified);
    } else if (qualified == "episode.horizon") {
      cfg.episode.horizon = static_cast<int>(parse_int(value, qualified));
    } else if (qualified == "episode.success_threshold") {
      cfg.episode.success_threshold = parse_double(value, qualified);
    } else if (qualified == "episode.early_stop") {
      cfg.episode.early_stop = parse_bool(value, qualified);
    } else if (qualified == "episode.reward_scale") {
      cfg.episode.reward_scale = parse_double(value, qualified);
    } else if (qualified == "episode.reward_power") {
      cfg.episode.reward_power = parse_double(value, qualified);
    } else if (qualified == "episode.terminal_bonus") {
      cfg.episode.terminal_bonus = parse_double(value, qualified);
    } else if (qualified == "ga.population_size") {
      cfg.ga.population_size = static_cast<int>(parse_int(value, qualified));
    } else if (qualified == "ga.num_parents") {
      cfg.ga.num_parents = static_cast<int>(parse_int(value, qualified));
    } else if (qualified == "ga.generations") {
      cfg.ga.generations = static_cast<int>(parse_int(value, qualified));
    } else if (qualified == "ga.mutation_probability") {
      cfg.ga.mutation_probability = parse_double(value, qualified);
    } else if (qualified == "ga.elite_count") {
      cfg.ga.elite_count = static_cast<int>(parse_int(value, qualified));
    } else if (qualified == "ga.c_final") {
      cfg.ga.c_final = parse_double(value, qualified);
    } else if (qualified == "ga.c_mean") {
      cfg.ga.c_mean = parse_double(value, qualified);
    } else if (qualified == "ga.p") {
      cfg.ga.p = parse_double(value, qualified);
    } else if (qualified == "ga.fidelity_stop") {
      cfg.ga.fidelity_stop = parse_double(value, qualified);
    } else if (qualified == "ga.workers") {
      cfg.ga.workers = static_cast<unsigned>(parse_int(value, qualified));
    } else if (qualified == "dqn.alpha") {
      cfg.dqn.alpha = parse_double(value, qualified);
    } else if (qualified == "dqn.gamma") {
      cfg.dqn.gamma = parse_double(value, qualified);
    } else if (qualified == "dqn.epsilon_start") {
      cfg.dqn.epsilon_start = parse_double(value, qualified);
    } else if (qualified == "dqn.epsilon_end") {
      cfg.dqn.epsilon_end = parse_double(value, qualified);
    } else if (qualified == "dqn.epsilon_decay") {
      cfg.dqn.epsilon_decay = parse_double(value, qualified);
    } else if (qualified == "dqn.batch_size") {
      cfg.dqn.batch_size = static_cast<int>(parse_int(value, qualified));
    } else if (qualified == "dqn.buffer_capacity") {
      cfg.dqn.buffer_capacity = static_cast<int>(parse_int(value, qualified));
    } else if (qualified == "dqn.target_update_period") {
      cfg.dqn.target_update_period =
          static_cast<int>(parse_int(value, qualified));
    } else if (qualified == "dqn.episodes") {
      cfg.dqn.episodes = static_cast<int>(parse_int(value, qualified));
    } else if (qualified == "dqn.hidden_sizes") {
      cfg.dqn.hidden_sizes = parse_int_list(value, qualified);
    } else {
      throw ParseError("config line " + std::to_string(line_no) +
                       ": unknown key '" + qualified + "'");
    }
  }
  cfg.propagate_seed();
  return cfg;
}

inline RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open config file: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str());
}

/// Canonical serialization; the default dump doubles as the config
/// documentation.
inline std::string serialize_run_config(const RunConfig& cfg) {
  using detail::join_int_list;
  std::ostringstream out;
  out << "[run]\n";
  out << "seed = " << cfg.seed << "\n";
  out << "output_dir = " << cfg.output_dir << "\n";
  out << "\n[chain]\n";
  out << "n_sites = " << cfg.chain().n_sites << "\n";
  out << "coupling = " << format_double(cfg.chain().coupling) << "\n";
  out << "field_strength = " << format_double(cfg.chain().field_strength)
      << "\n";
  out << "dt = " << format_double(cfg.chain().dt) << "\n";
  out << "\n[episode]\n";
  out << "horizon = " << cfg.episode.horizon
      << "  # 0 = ceil(2.5 * n_sites)\n";
  out << "success_threshold = " << format_double(cfg.episode.success_threshold)
      << "\n";
  out << "early_stop = " << (cfg.episode.early_stop ? "true" : "false")
      << "  # end episodes once the threshold is reached\n";
  out << "reward_scale = " << format_double(cfg.episode.reward_scale) << "\n";
  out << "reward_power = " << format_double(cfg.episode.reward_power) << "\n";
  out << "terminal_bonus = " << format_double(cfg.episode.terminal_bonus)
      << "\n";
  out << "\n[ga]\n";
  out << "population_size = " << cfg.ga.population_size << "\n";
  out << "num_parents = " << cfg.ga.num_parents << "\n";
  out << "generations = " << cfg.ga.generations << "\n";
  out << "mutation_probability = "
      << format_double(cfg.ga.mutation_probability) << "\n";
  out << "elite_count = " << cfg.ga.elite_count << "\n";
  out << "c_final = " << format_double(cfg.ga.c_final)
      << "  # weight of the final fidelity\n";
  out << "c_mean = " << format_double(cfg.ga.c_mean)
      << "  # weight of the mean of fidelity^p\n";
  out << "p = " << format_double(cfg.ga.p) << "\n";
  out << "fidelity_stop = " << format_double(cfg.ga.fidelity_stop)
      << "  # stop once reached; > 1 disables\n";
  out << "workers = " << cfg.ga.workers << "  # 0 = hardware concurrency\n";
  out << "\n[dqn]\n";
  out << "alpha = " << format_double(cfg.dqn.alpha) << "\n";
  out << "gamma = " << format_double(cfg.dqn.gamma) << "\n";
  out << "epsilon_start = " << format_double(cfg.dqn.epsilon_start) << "\n";
  out << "epsilon_end = " << format_double(cfg.dqn.epsilon_end) << "\n";
  out << "epsilon_decay = " << format_double(cfg.dqn.epsilon_decay)
      << "  # per-episode exponential decay\n";
  out << "batch_size = " << cfg.dqn.batch_size << "\n";
  out << "buffer_capacity = " << cfg.dqn.buffer_capacity << "\n";
  out << "target_update_period = " << cfg.dqn.target_update_period
      << "  # gradient steps between target syncs\n";
  out << "episodes = " << cfg.dqn.episodes << "\n";
  out << "hidden_sizes = " << join_int_list(cfg.dqn.hidden_sizes) << "\n";
  return out.str();
}

inline void save_run_config(const std::filesystem::path& path,
                            const RunConfig& cfg) {
  std::ofstream out = open_output(path);
  out << serialize_run_config(cfg);
}

}  // namespace qst

#endif  // QST_CONFIG_HPP_
