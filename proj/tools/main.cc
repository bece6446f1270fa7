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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "slingshot/checks.h"
#include "slingshot/errors.h"
#include "slingshot/harness.h"
#include "slingshot/oracles.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitInvariant = 4;

struct OverrideFlags {
  std::string game, algorithm, regularizer, divergence, t_sigma, init;
  double mu = 0.0, eta = 0.0, noise_std = 0.0;
  int64_t horizon = 0, record_every = 0;
  int instances = 0, threads = 0;
  uint64_t seed = 0;
};

// Flag overrides are applied after the file/preset config; the CLI parser
// already keeps only the last occurrence of a repeated flag.
void AddOverrideFlags(CLI::App* cmd, OverrideFlags& f) {
  cmd->add_option("--game", f.game, "Game descriptor (biased_rps, random:<n>)");
  cmd->add_option("--algorithm", f.algorithm,
                  "ftrl_sp, md_sp, mwu, omwu, ogd");
  cmd->add_option("--regularizer", f.regularizer, "entropy, log_barrier, l2");
  cmd->add_option("--divergence", f.divergence,
                  "kl, reverse_kl, l2, itakura_saito, alpha:<a>, renyi:<a>");
  cmd->add_option("--mu", f.mu, "Perturbation strength");
  cmd->add_option("--eta", f.eta, "Constant learning rate");
  cmd->add_option("--t-sigma", f.t_sigma,
                  "Slingshot update interval (integer or 'inf')");
  cmd->add_option("--noise-std", f.noise_std,
                  "Gaussian feedback noise std (0 = full feedback)");
  cmd->add_option("--horizon", f.horizon, "Total iterations");
  cmd->add_option("--instances", f.instances, "Number of instances");
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--record-every", f.record_every, "Metric sampling stride");
  cmd->add_option("--threads", f.threads, "Worker pool size (0 = all cores)");
  cmd->add_option("--init", f.init, "uniform or random_interior");
}

void ApplyOverrides(const CLI::App* cmd, const OverrideFlags& f,
                    slingshot::ExperimentConfig& cfg) {
  using slingshot::ApplyOption;
  if (cmd->count("--game")) ApplyOption(cfg, "game", f.game);
  if (cmd->count("--init")) ApplyOption(cfg, "init", f.init);
  if (cmd->count("--algorithm")) ApplyOption(cfg, "learner.algorithm", f.algorithm);
  if (cmd->count("--regularizer")) {
    ApplyOption(cfg, "learner.regularizer", f.regularizer);
  }
  if (cmd->count("--divergence")) {
    ApplyOption(cfg, "learner.divergence", f.divergence);
  }
  if (cmd->count("--mu")) ApplyOption(cfg, "learner.mu", std::to_string(f.mu));
  if (cmd->count("--eta")) {
    ApplyOption(cfg, "learner.rate", "constant:" + std::to_string(f.eta));
  }
  if (cmd->count("--t-sigma")) ApplyOption(cfg, "learner.t_sigma", f.t_sigma);
  if (cmd->count("--noise-std")) {
    ApplyOption(cfg, "feedback.noise_std", std::to_string(f.noise_std));
  }
  if (cmd->count("--horizon")) {
    ApplyOption(cfg, "horizon", std::to_string(f.horizon));
  }
  if (cmd->count("--instances")) {
    ApplyOption(cfg, "instances", std::to_string(f.instances));
  }
  if (cmd->count("--seed")) ApplyOption(cfg, "seed", std::to_string(f.seed));
  if (cmd->count("--record-every")) {
    ApplyOption(cfg, "record_every", std::to_string(f.record_every));
  }
  if (cmd->count("--threads")) {
    ApplyOption(cfg, "threads", std::to_string(f.threads));
  }
}

bool RunIsCertified(const slingshot::ExperimentConfig& cfg) {
  using namespace slingshot;
  if (cfg.learner.algorithm != Algorithm::kFtrlSp &&
      cfg.learner.algorithm != Algorithm::kMdSp) {
    return false;
  }
  try {
    GameSpec game = BuildGameFromDescriptor(cfg.game, /*seed=*/0);
    StrategyProfile uniform = UniformProfile(game);
    ComputeCertifiedRate(cfg.learner, game, uniform);
    return true;
  } catch (const UnsupportedCombinationError&) {
    return false;
  } catch (const ConfigError&) {
    return false;
  }
}

int ExecuteExperiment(const slingshot::ExperimentConfig& cfg,
                      const std::string& out_dir, bool force,
                      bool dump_config) {
  if (dump_config) {
    std::cout << slingshot::DumpConfig(cfg);
    return kExitOk;
  }
  bool certified = RunIsCertified(cfg);
  if (!certified) {
    std::cerr << "note: run is uncertified (no theoretical step-size bound "
                 "for this configuration)\n";
  }
  slingshot::ExperimentResult result = slingshot::RunExperiment(cfg);
  slingshot::WriteOutputs(out_dir, cfg, result, force);
  nlohmann::json meta;
  meta["certified"] = certified;
  meta["config"] = slingshot::DumpConfig(cfg);
  std::ofstream(std::filesystem::path(out_dir) / "meta.json")
      << meta.dump(2) << "\n";
  std::cout << "wrote " << out_dir << "/runs.csv and summary.csv ("
            << result.records.size() << " records)\n";
  return kExitOk;
}

nlohmann::json ProfileJson(const slingshot::StrategyProfile& p) {
  return nlohmann::json(p.strategies);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slingshot-perturbed learning dynamics for monotone games"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run an experiment from a config file");
  std::string config_path, run_out = "out";
  bool run_force = false, run_dump = false;
  run->add_option("config", config_path, "Config file path");
  run->add_option("--out", run_out, "Output directory");
  run->add_flag("--force", run_force, "Allow non-empty output directory");
  run->add_flag("--dump-config", run_dump, "Print resolved config and exit");
  OverrideFlags run_flags;
  AddOverrideFlags(run, run_flags);

  // preset
  auto* preset = app.add_subcommand("preset", "Run a named experiment preset");
  std::string preset_name, preset_out = "out";
  bool preset_force = false, preset_dump = false, preset_list = false;
  preset->add_option("name", preset_name, "Preset name");
  preset->add_option("--out", preset_out, "Output directory");
  preset->add_flag("--force", preset_force, "Allow non-empty output directory");
  preset->add_flag("--dump-config", preset_dump,
                   "Print resolved config and exit");
  preset->add_flag("--list", preset_list, "List preset names and exit");
  OverrideFlags preset_flags;
  AddOverrideFlags(preset, preset_flags);

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Solve a reference point");
  std::string oracle_kind, oracle_game = "biased_rps";
  std::string oracle_div = "l2", oracle_reg = "l2";
  double oracle_mu = 0.1, oracle_tol = 1e-7;
  uint64_t oracle_seed = 0;
  oracle->add_option("kind", oracle_kind, "nash or perturbed")->required();
  oracle->add_option("--game", oracle_game, "Game descriptor");
  oracle->add_option("--divergence", oracle_div, "Perturbation divergence");
  oracle->add_option("--regularizer", oracle_reg, "Mirror regularizer");
  oracle->add_option("--mu", oracle_mu, "Perturbation strength");
  oracle->add_option("--tol", oracle_tol, "Target residual");
  oracle->add_option("--seed", oracle_seed, "Seed for random games");

  // check
  auto* check = app.add_subcommand("check", "Run a compiled-in invariant suite");
  std::string suite;
  check->add_option("suite", suite, "gradients, projection, contraction, slingshot")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed()) {
      slingshot::ExperimentConfig cfg;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw slingshot::ConfigError("cannot open " + config_path);
        std::stringstream buf;
        buf << in.rdbuf();
        cfg = slingshot::ParseConfigText(buf.str());
      }
      ApplyOverrides(run, run_flags, cfg);
      return ExecuteExperiment(cfg, run_out, run_force, run_dump);
    }
    if (preset->parsed()) {
      if (preset_list) {
        for (const auto& [name, unused] : slingshot::BuiltinPresets()) {
          std::cout << name << "\n";
        }
        return kExitOk;
      }
      if (preset_name.empty()) {
        throw slingshot::ConfigError("preset name required (see --list)");
      }
      slingshot::ExperimentConfig cfg = slingshot::PresetByName(preset_name);
      ApplyOverrides(preset, preset_flags, cfg);
      return ExecuteExperiment(cfg, preset_out, preset_force, preset_dump);
    }
    if (oracle->parsed()) {
      slingshot::GameSpec game =
          slingshot::BuildGameFromDescriptor(oracle_game, oracle_seed);
      slingshot::OracleResult res;
      if (oracle_kind == "nash") {
        res = slingshot::SolveNashSmall(game, oracle_tol);
      } else if (oracle_kind == "perturbed") {
        res = slingshot::SolvePerturbedEquilibrium(
            game, slingshot::Divergence::FromName(oracle_div),
            slingshot::Regularizer::FromName(oracle_reg), oracle_mu,
            slingshot::UniformProfile(game), oracle_tol);
      } else {
        throw slingshot::ConfigError("unknown oracle kind: " + oracle_kind +
                                     " (expected nash or perturbed)");
      }
      nlohmann::json out;
      out["point"] = ProfileJson(res.point);
      out["residual"] = res.residual;
      out["iterations"] = res.iterations;
      std::cout << out.dump(2) << "\n";
      return kExitOk;
    }
    if (check->parsed()) {
      return slingshot::RunCheckSuite(suite) ? kExitOk : kExitInvariant;
    }
  } catch (const slingshot::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const slingshot::UnsupportedCombinationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const slingshot::DimensionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const slingshot::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what()
              << " (best residual " << e.best_residual << ")\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitConfig;
}
