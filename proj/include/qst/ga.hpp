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

#ifndef QST_GA_HPP_
#define QST_GA_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qst/environment.hpp"
#include "qst/parallel.hpp"

namespace qst {

// A chromosome is a full pulse program: one action id per interval.
using Chromosome = std::vector<int>;

struct GAConfig {
  int population_size = 2048;
  int num_parents = 205;
  int generations = 2000;
  // Per-individual probability of one swap.
  double mutation_probability = 0.3;
  // Lower bound on unchanged fittest survivors; parents always survive, so
  // any value up to num_parents is honoured.
  int elite_count = 8;
  // fitness = c_final * f_L + c_mean * mean_j f_j^p
  double c_final = 10.0;
  double c_mean = 5.0;
  double p = 3.0;
  std::uint64_t seed = 1;
  // Stop once the best individual's final fidelity reaches this; a value
  // above 1 disables the stop.
  double fidelity_stop = 0.95;
  // 0 = hardware concurrency.
  unsigned workers = 0;

  void validate() const {
    if (population_size < 2)
      throw std::invalid_argument("GAConfig: population_size must be >= 2");
    if (num_parents < 1 || num_parents >= population_size)
      throw std::invalid_argument(
          "GAConfig: need 1 <= num_parents < population_size");
    if (elite_count < 1 || elite_count > num_parents)
      throw std::invalid_argument(
          "GAConfig: need 1 <= elite_count <= num_parents");
    if (generations < 0)
      throw std::invalid_argument("GAConfig: generations must be >= 0");
    if (mutation_probability < 0.0 || mutation_probability > 1.0)
      throw std::invalid_argument(
          "GAConfig: mutation_probability must be in [0,1]");
    if (p < 1.0) throw std::invalid_argument("GAConfig: p must be >= 1");
  }

  bool operator==(const GAConfig&) const = default;
};

struct GAReport {
  Chromosome best;
  std::vector<double> best_fitness_history;   // one entry per generation
  std::vector<double> best_fidelity_history;  // final fidelity of each best
  double best_fidelity = 0.0;                 // final fidelity of `best`
  int generations_run = 0;
};

/// c_final * f_L + c_mean * mean_j f_j^p over a stepwise fidelity profile;
/// the mean term rewards sequences that hold the transfer rather than
/// spike through it.
inline double fitness_from_profile(const std::vector<double>& stepwise,
                                   const GAConfig& gacfg) {
  if (stepwise.empty()) return 0.0;
  double power_sum = 0.0;
  for (double f : stepwise) power_sum += std::pow(f, gacfg.p);
  return gacfg.c_final * stepwise.back() +
         gacfg.c_mean * power_sum / static_cast<double>(stepwise.size());
}

namespace detail {

struct Score {
  double fitness = 0.0;
  double final_fidelity = 0.0;
};

inline Score score_chromosome(const Chromosome& c, const GAConfig& gacfg,
                              const EpisodeConfig& cfg,
                              const PropagatorSet& set) {
  Score s;
  if (c.empty()) return s;
  const int n = cfg.chain.n_sites;
  QuantumState state = site_basis_state(n, 0);
  std::vector<double> stepwise;
  stepwise.reserve(c.size());
  for (int id : c) {
    state = qst::apply(set.at(id), state);
    stepwise.push_back(std::norm(state(n - 1)));
  }
  s.final_fidelity = stepwise.back();
  s.fitness = fitness_from_profile(stepwise, gacfg);
  return s;
}

}  // namespace detail

inline double fitness(const Chromosome& c, const GAConfig& gacfg,
                      const EpisodeConfig& cfg, const PropagatorSet& set) {
  return detail::score_chromosome(c, gacfg, cfg, set).fitness;
}

/// The k fittest individuals, ties broken by lower population index.
inline std::vector<Chromosome> steady_state_select(
    const std::vector<std::pair<Chromosome, double>>& pop, int k) {
  if (k < 0 || static_cast<std::size_t>(k) > pop.size())
    throw std::invalid_argument("steady_state_select: bad k");
  std::vector<std::size_t> order(pop.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&pop](std::size_t a, std::size_t b) {
                     return pop[a].second > pop[b].second;
                   });
  std::vector<Chromosome> selected;
  selected.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    selected.push_back(pop[order[static_cast<std::size_t>(i)]].first);
  return selected;
}

/// Each gene copied from a or b with probability 1/2.
inline Chromosome uniform_crossover(const Chromosome& a, const Chromosome& b,
                                    std::mt19937_64& rng) {
  if (a.size() != b.size())
    throw std::invalid_argument("uniform_crossover: length mismatch");
  std::bernoulli_distribution coin(0.5);
  Chromosome child(a.size());
  for (std::size_t j = 0; j < a.size(); ++j)
    child[j] = coin(rng) ? a[j] : b[j];
  return child;
}

/// With the given probability, exchanges the values of two distinct
/// uniformly chosen positions. Preserves the gene multiset.
inline Chromosome swap_mutation(const Chromosome& c, std::mt19937_64& rng,
                                double probability) {
  if (c.size() < 2)
    throw std::invalid_argument("swap_mutation: need at least 2 genes");
  Chromosome mutated = c;
  std::bernoulli_distribution mutate(probability);
  if (probability > 0.0 && mutate(rng)) {
    const std::size_t len = c.size();
    std::uniform_int_distribution<std::size_t> first(0, len - 1);
    std::uniform_int_distribution<std::size_t> second(0, len - 2);
    const std::size_t i = first(rng);
    std::size_t j = second(rng);
    if (j >= i) ++j;
    std::swap(mutated[i], mutated[j]);
  }
  return mutated;
}

/// Steady-state GA: the num_parents fittest survive each generation and
/// offspring built by uniform crossover of uniformly drawn parent pairs,
/// then swap mutation, replace the rest. Fitness evaluation is spread
/// across workers; all random draws come from one seeded stream, so runs
/// are reproducible for any worker count.
inline GAReport run_ga(const GAConfig& gacfg, const EpisodeConfig& cfg) {
  gacfg.validate();
  cfg.validate();
  const PropagatorSet set(cfg.chain);
  const int horizon = cfg.effective_horizon();
  const std::size_t pop_size = static_cast<std::size_t>(gacfg.population_size);
  const std::size_t n_parents = static_cast<std::size_t>(gacfg.num_parents);

  std::mt19937_64 rng(gacfg.seed);
  std::uniform_int_distribution<int> gene(0, kNumActions - 1);

  std::vector<Chromosome> population(pop_size);
  for (auto& c : population) {
    c.resize(static_cast<std::size_t>(horizon));
    for (auto& g : c) g = gene(rng);
  }

  std::vector<detail::Score> scores(pop_size);
  auto evaluate_range = [&](std::size_t begin) {
    parallel_for_index(pop_size - begin, gacfg.workers,
                       [&, begin](std::size_t i) {
                         scores[begin + i] = detail::score_chromosome(
                             population[begin + i], gacfg, cfg, set);
                       });
  };
  auto best_index = [&]() {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop_size; ++i)
      if (scores[i].fitness > scores[best].fitness) best = i;
    return best;
  };

  evaluate_range(0);

  GAReport report;
  std::size_t best = best_index();
  report.best_fitness_history.push_back(scores[best].fitness);
  report.best_fidelity_history.push_back(scores[best].final_fidelity);

  std::uniform_int_distribution<std::size_t> parent_pick(0, n_parents - 1);
  for (int gen = 0; gen < gacfg.generations; ++gen) {
    if (scores[best_index()].final_fidelity >= gacfg.fidelity_stop) break;

    // Survivors: the top num_parents, ties to lower index.
    std::vector<std::size_t> order(pop_size);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&scores](std::size_t a, std::size_t b) {
                       return scores[a].fitness > scores[b].fitness;
                     });

    std::vector<Chromosome> next(pop_size);
    std::vector<detail::Score> next_scores(pop_size);
    for (std::size_t i = 0; i < n_parents; ++i) {
      next[i] = population[order[i]];
      next_scores[i] = scores[order[i]];
    }
    for (std::size_t i = n_parents; i < pop_size; ++i) {
      const Chromosome& a = next[parent_pick(rng)];
      const Chromosome& b = next[parent_pick(rng)];
      next[i] = swap_mutation(uniform_crossover(a, b, rng), rng,
                              gacfg.mutation_probability);
    }
    population = std::move(next);
    scores = std::move(next_scores);
    evaluate_range(n_parents);

    report.generations_run = gen + 1;
    best = best_index();
    report.best_fitness_history.push_back(scores[best].fitness);
    report.best_fidelity_history.push_back(scores[best].final_fidelity);
  }

  best = best_index();
  report.best = population[best];
  report.best_fidelity = scores[best].final_fidelity;
  return report;
}

/// Exact optimum over all 16^length action sequences, by depth-first
/// enumeration with incremental states. Refuses lengths beyond the stated
/// 10^7 budget. Ties go to the lexicographically first sequence.
inline std::pair<std::vector<int>, double> exhaustive_best(
    const EpisodeConfig& cfg, const PropagatorSet& set, int length) {
  cfg.validate();
  if (length < 0)
    throw std::invalid_argument("exhaustive_best: negative length");
  double budget = 1.0;
  for (int i = 0; i < length; ++i) budget *= kNumActions;
  if (budget > 1e7)
    throw std::invalid_argument(
        "exhaustive_best: 16^length exceeds the 1e7 budget");

  const int n = cfg.chain.n_sites;
  std::vector<QuantumState> stack(static_cast<std::size_t>(length) + 1);
  stack[0] = site_basis_state(n, 0);
  std::vector<int> current(static_cast<std::size_t>(length), 0);
  std::vector<int> best_seq;
  double best_fidelity = -1.0;

  // Depth-first over the 16-ary tree of sequences.
  auto descend = [&](auto&& self, int depth) -> void {
    if (depth == length) {
      const double f = std::norm(stack[static_cast<std::size_t>(depth)](n - 1));
      if (f > best_fidelity) {
        best_fidelity = f;
        best_seq = current;
      }
      return;
    }
    for (int id = 0; id < kNumActions; ++id) {
      current[static_cast<std::size_t>(depth)] = id;
      stack[static_cast<std::size_t>(depth) + 1] =
          set.at(id) * stack[static_cast<std::size_t>(depth)];
      self(self, depth + 1);
    }
  };
  descend(descend, 0);
  return {best_seq, best_fidelity};
}

}  // namespace qst

#endif  // QST_GA_HPP_
