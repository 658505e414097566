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

// Command-line front end: state transfer through a controlled XX chain,
// with a genetic algorithm and a deep Q-network searching for pulse
// sequences. All outputs are CSV/plain-text files meant for plotting.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "qst/qst.hpp"

namespace {

struct GlobalOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> n_sites;
  bool quiet = false;
};

qst::RunConfig resolve_config(const GlobalOptions& opts) {
  qst::RunConfig cfg;
  if (!opts.config_path.empty()) cfg = qst::load_run_config(opts.config_path);
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.out_dir) cfg.output_dir = *opts.out_dir;
  if (opts.n_sites) cfg.chain().n_sites = *opts.n_sites;
  cfg.propagate_seed();
  return cfg;
}

void add_global_options(CLI::App* cmd, GlobalOptions& opts) {
  cmd->add_option("--config", opts.config_path, "configuration file");
  cmd->add_option("--seed", opts.seed, "master seed override");
  cmd->add_option("--out", opts.out_dir, "output directory override");
  cmd->add_option("--n", opts.n_sites, "chain length override");
  cmd->add_flag("--quiet", opts.quiet, "suppress progress output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum state transfer through a controlled XX qubit chain"};
  app.require_subcommand(1);

  GlobalOptions opts;

  CLI::App* catalog = app.add_subcommand(
      "catalog", "print the 16 control actions in canonical order");

  CLI::App* evolve = app.add_subcommand(
      "evolve", "natural evolution of the uncontrolled chain, as t,P rows");
  double t_max = 10.0;
  int samples = 1000;
  evolve->add_option("--t-max", t_max, "time horizon")->check(CLI::PositiveNumber);
  evolve->add_option("--samples", samples, "number of samples")
      ->check(CLI::Range(2, 100000000));
  add_global_options(evolve, opts);

  CLI::App* ga = app.add_subcommand(
      "ga", "genetic-algorithm pulse search (best sequence + history)");
  add_global_options(ga, opts);

  CLI::App* drl = app.add_subcommand(
      "drl", "deep Q-network pulse search (best sequence + history)");
  add_global_options(drl, opts);

  CLI::App* replay = app.add_subcommand(
      "replay", "fidelity profile of a stored action sequence");
  std::string sequence_file;
  replay->add_option("--sequence", sequence_file, "sequence file to replay")
      ->required();
  add_global_options(replay, opts);

  CLI::App* compare = app.add_subcommand(
      "compare", "run both optimizers repeatedly and summarize");
  int repetitions = 1;
  compare->add_option("--repetitions", repetitions, "independent runs")
      ->check(CLI::PositiveNumber);
  add_global_options(compare, opts);

  CLI::App* config = app.add_subcommand("config", "configuration utilities");
  bool print_default = false;
  config->add_flag("--print-default", print_default,
                   "print the default configuration file");
  add_global_options(config, opts);

  CLI11_PARSE(app, argc, argv);

  std::ostream* log = opts.quiet ? nullptr : &std::cerr;
  try {
    if (catalog->parsed()) {
      qst::cmd_catalog(std::cout);
    } else if (evolve->parsed()) {
      qst::cmd_evolve(resolve_config(opts), t_max, samples, log);
    } else if (ga->parsed()) {
      qst::cmd_ga(resolve_config(opts), log);
    } else if (drl->parsed()) {
      qst::cmd_drl(resolve_config(opts), log);
    } else if (replay->parsed()) {
      qst::cmd_replay(sequence_file, resolve_config(opts), log);
    } else if (compare->parsed()) {
      qst::cmd_compare(resolve_config(opts), repetitions, log);
    } else if (config->parsed()) {
      std::cout << qst::serialize_run_config(
          print_default ? qst::RunConfig{} : resolve_config(opts));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
