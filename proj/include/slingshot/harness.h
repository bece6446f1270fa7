// Copyright 2026 The Slingshot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLINGSHOT_HARNESS_H_
#define SLINGSHOT_HARNESS_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "slingshot/game.h"
#include "slingshot/learners.h"

namespace slingshot {

struct ExperimentConfig {
  std::string game = "biased_rps";  // "biased_rps" | "random:<actions>"
  std::string init = "uniform";     // "uniform" | "random_interior"
  LearnerConfig learner;
  NoiseModel feedback = NoiseModel::Full();
  int64_t horizon = 100'000;
  int n_instances = 1;
  uint64_t master_seed = 0;
  int64_t record_every = 100;
  int threads = 1;  // <= 0 picks hardware concurrency
  // Optional extra metric columns. div_to_perturbed measures
  // D_psi(pi^{mu,sigma^0}, pi^t) against the equilibrium of the game
  // perturbed at the initial slingshot; dist_to_nash is the l2 distance to
  // a Nash point solved per instance.
  bool track_div_to_perturbed = false;
  bool track_dist_to_nash = false;
};

struct RunRecord {
  int instance = 0;
  int64_t t = 0;
  double exploitability = 0.0;
  double div_to_perturbed = 0.0;  // valid only when tracked
  double dist_to_nash = 0.0;      // valid only when tracked
};

struct SummaryRow {
  int64_t t = 0;
  double mean_exploitability = 0.0;
  double stderr_exploitability = 0.0;  // sample std / sqrt(n); 0 for n = 1
};

struct ExperimentResult {
  std::vector<RunRecord> records;  // ordered by (instance, t)
  std::vector<SummaryRow> summary;
};

// Instance seeds: SplitMix64 finalizer of master_seed + (id + 1) * odd
// constant. Distinct ids give distinct seeds (both maps are bijections).
uint64_t InstanceSeed(uint64_t master_seed, int instance_id);

// Runs n_instances independent instances (random payoff games draw fresh
// blocks per instance; biased RPS keeps the game fixed and redraws the
// initial profile when init = "random_interior", sampling a flat
// Dirichlet). Records exploitability at every t with
// t mod record_every == 0, plus the final t. Deterministic: output depends
// only on the config, not on the thread count.
ExperimentResult RunExperiment(const ExperimentConfig& cfg);

// Per-checkpoint mean and standard error across instances.
std::vector<SummaryRow> Aggregate(const std::vector<RunRecord>& records,
                                  bool tracked_div = false,
                                  bool tracked_nash = false);

// CSV emission; doubles printed with 17 significant digits.
std::string RunsCsv(const ExperimentResult& result, bool tracked_div,
                    bool tracked_nash);
std::string SummaryCsv(const ExperimentResult& result);

// Writes runs.csv and summary.csv into out_dir. The directory must not
// exist or must be empty, unless force is set.
void WriteOutputs(const std::string& out_dir, const ExperimentConfig& cfg,
                  const ExperimentResult& result, bool force);

// Named configurations reproducing the reference experiments. Bare figure
// names (e.g. "fig1_3brps") alias the KL-perturbation variant.
std::vector<std::pair<std::string, ExperimentConfig>> BuiltinPresets();
ExperimentConfig PresetByName(const std::string& name);

// Flat key-value config format: one "key = value" per line, '#' comments.
// Keys: game, init, horizon, instances, seed, record_every, threads,
// learner.algorithm, learner.regularizer, learner.divergence, learner.mu,
// learner.rate ("constant:<eta>" | "inverse_linear:<kappa>:<theta>"),
// learner.t_sigma (integer or "inf"), feedback.noise_std.
void ApplyOption(ExperimentConfig& cfg, const std::string& key,
                 const std::string& value);
ExperimentConfig ParseConfigText(const std::string& text,
                                 ExperimentConfig base = {});
std::string DumpConfig(const ExperimentConfig& cfg);

// Builds the game named by cfg.game (random games use the given seed).
GameSpec BuildGameFromDescriptor(const std::string& descriptor, uint64_t seed);

}  // namespace slingshot

#endif  // SLINGSHOT_HARNESS_H_
