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

#ifndef QST_COMMANDS_HPP_
#define QST_COMMANDS_HPP_

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qst/config.hpp"
#include "qst/dqn.hpp"
#include "qst/dynamics.hpp"
#include "qst/full_hilbert.hpp"
#include "qst/ga.hpp"
#include "qst/io.hpp"

namespace qst {

/// Longest run of consecutive steps whose fidelity stays at or above 90%
/// of the profile maximum.
inline int plateau_width(const std::vector<std::pair<int, double>>& profile) {
  if (profile.empty()) return 0;
  double max_fidelity = 0.0;
  for (const auto& [step, f] : profile) max_fidelity = std::max(max_fidelity, f);
  const double level = 0.9 * max_fidelity;
  int best = 0;
  int run = 0;
  for (const auto& [step, f] : profile) {
    run = f >= level ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best;
}

inline std::string catalog_table() {
  const ActionCatalog catalog;
  std::ostringstream out;
  out << "id  left(1,2,3)  right(N-2,N-1,N)\n";
  for (const ControlAction& a : catalog.actions()) {
    out << std::setw(2) << a.id << "  ";
    for (bool b : a.left_mask) out << (b ? '1' : '0');
    out << "          ";
    for (bool b : a.right_mask) out << (b ? '1' : '0');
    out << '\n';
  }
  return out.str();
}

inline void cmd_catalog(std::ostream& out) { out << catalog_table(); }

/// Natural (all controls off) evolution, written as `t,P` rows.
inline std::vector<std::pair<double, double>> cmd_evolve(
    const RunConfig& cfg, double t_max, int samples, std::ostream* log) {
  const auto series = natural_evolution(cfg.chain(), t_max, samples);
  const auto path =
      std::filesystem::path(cfg.output_dir) / "natural_evolution.csv";
  write_time_series(path, series);
  if (log) *log << "wrote " << path.string() << " (" << series.size()
                << " samples)\n";
  return series;
}

struct GACommandResult {
  GAReport report;
  std::vector<std::pair<int, double>> best_profile;
};

inline GACommandResult cmd_ga(const RunConfig& cfg, std::ostream* log) {
  cfg.validate();
  GACommandResult res;
  res.report = run_ga(cfg.ga, cfg.episode);

  const PropagatorSet set(cfg.chain());
  res.best_profile =
      sequence_fidelity_profile(res.report.best, cfg.episode, set);

  const std::filesystem::path dir(cfg.output_dir);
  write_sequence(dir / "ga_best_sequence.txt", res.report.best);
  {
    std::ofstream out = open_output(dir / "ga_history.csv");
    out << "generation,best_fitness,best_fidelity\n";
    for (std::size_t g = 0; g < res.report.best_fitness_history.size(); ++g)
      out << g << ',' << format_double(res.report.best_fitness_history[g])
          << ',' << format_double(res.report.best_fidelity_history[g]) << '\n';
  }
  write_profile(dir / "ga_best_profile.csv", res.best_profile,
                cfg.chain().dt);
  if (log)
    *log << "ga: best fidelity " << format_double(res.report.best_fidelity)
         << " after " << res.report.generations_run << " generations\n";
  return res;
}

struct DRLCommandResult {
  TrainResult train;
  std::vector<std::pair<int, double>> best_profile;
};

inline DRLCommandResult cmd_drl(const RunConfig& cfg, std::ostream* log) {
  cfg.validate();
  DRLCommandResult res;
  res.train = train(cfg.dqn, cfg.episode);

  const PropagatorSet set(cfg.chain());
  res.best_profile =
      sequence_fidelity_profile(res.train.best_sequence, cfg.episode, set);

  const std::filesystem::path dir(cfg.output_dir);
  write_sequence(dir / "dqn_best_sequence.txt", res.train.best_sequence);
  {
    std::ofstream out = open_output(dir / "dqn_history.csv");
    out << "episode,epsilon,return,best_fidelity\n";
    for (const EpisodeRecord& r : res.train.history)
      out << r.episode << ',' << format_double(r.epsilon) << ','
          << format_double(r.episode_return) << ','
          << format_double(r.best_fidelity) << '\n';
  }
  write_profile(dir / "dqn_best_profile.csv", res.best_profile,
                cfg.chain().dt);
  save_value_net(dir / "dqn_valuenet.txt", res.train.params);
  if (log)
    *log << "dqn: best executed fidelity "
         << format_double(res.train.best_fidelity) << " over "
         << res.train.history.size() << " episodes\n";
  return res;
}

inline std::vector<std::pair<int, double>> cmd_replay(
    const std::filesystem::path& sequence_file, const RunConfig& cfg,
    std::ostream* log) {
  const std::vector<int> seq = read_sequence(sequence_file);
  const PropagatorSet set(cfg.chain());
  // Stored sequences may outlive the configured horizon; widen it so the
  // whole file replays.
  EpisodeConfig episode = cfg.episode;
  episode.horizon =
      std::max(episode.effective_horizon(), static_cast<int>(seq.size()));
  const auto profile = sequence_fidelity_profile(seq, episode, set);
  const auto path =
      std::filesystem::path(cfg.output_dir) / "replay_profile.csv";
  write_profile(path, profile, cfg.chain().dt);
  if (log) *log << "wrote " << path.string() << " (" << profile.size()
                << " steps)\n";
  return profile;
}

struct MethodSummary {
  std::string method;
  int repetitions = 0;
  double mean_best_fidelity = 0.0;
  double max_best_fidelity = 0.0;
  int plateau = 0;
};

/// Runs both optimizers `repetitions` times with seeds seed, seed+1, ...
/// and summarizes per-method mean/max best fidelity plus the plateau width
/// of each method's best solution.
inline std::vector<MethodSummary> cmd_compare(const RunConfig& cfg,
                                              int repetitions,
                                              std::ostream* log) {
  cfg.validate();
  if (repetitions < 1)
    throw std::invalid_argument("compare: repetitions must be >= 1");

  const PropagatorSet set(cfg.chain());
  MethodSummary ga_summary{"ga", repetitions, 0.0, 0.0, 0};
  MethodSummary dqn_summary{"dqn", repetitions, 0.0, 0.0, 0};

  for (int rep = 0; rep < repetitions; ++rep) {
    RunConfig derived = cfg;
    derived.seed = cfg.seed + static_cast<std::uint64_t>(rep);
    derived.propagate_seed();

    const GAReport ga_report = run_ga(derived.ga, derived.episode);
    ga_summary.mean_best_fidelity += ga_report.best_fidelity;
    if (ga_report.best_fidelity >= ga_summary.max_best_fidelity) {
      ga_summary.max_best_fidelity = ga_report.best_fidelity;
      ga_summary.plateau = plateau_width(
          sequence_fidelity_profile(ga_report.best, derived.episode, set));
    }
    if (log)
      *log << "compare rep " << rep << ": ga best "
           << format_double(ga_report.best_fidelity) << '\n';

    const TrainResult dqn_result = train(derived.dqn, derived.episode);
    dqn_summary.mean_best_fidelity += dqn_result.best_fidelity;
    if (dqn_result.best_fidelity >= dqn_summary.max_best_fidelity) {
      dqn_summary.max_best_fidelity = dqn_result.best_fidelity;
      dqn_summary.plateau = plateau_width(sequence_fidelity_profile(
          dqn_result.best_sequence, derived.episode, set));
    }
    if (log)
      *log << "compare rep " << rep << ": dqn best "
           << format_double(dqn_result.best_fidelity) << '\n';
  }
  ga_summary.mean_best_fidelity /= repetitions;
  dqn_summary.mean_best_fidelity /= repetitions;

  const auto path =
      std::filesystem::path(cfg.output_dir) / "compare_summary.csv";
  std::ofstream out = open_output(path);
  out << "method,repetitions,mean_best_fidelity,max_best_fidelity,"
         "plateau_width\n";
  for (const MethodSummary& s : {ga_summary, dqn_summary})
    out << s.method << ',' << s.repetitions << ','
        << format_double(s.mean_best_fidelity) << ','
        << format_double(s.max_best_fidelity) << ',' << s.plateau << '\n';
  if (log) *log << "wrote " << path.string() << '\n';
  return {ga_summary, dqn_summary};
}

}  // namespace qst

#endif  // QST_COMMANDS_HPP_
