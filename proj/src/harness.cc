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

#include "slingshot/harness.h"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "slingshot/errors.h"
#include "slingshot/oracles.h"
#include "slingshot/rng.h"

namespace slingshot {

namespace {

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

StrategyProfile SampleDirichletProfile(const GameSpec& game, Rng& rng) {
  StrategyProfile p;
  for (int d : game.action_counts) {
    std::vector<double> s(d);
    double sum = 0.0;
    for (double& v : s) {
      v = -std::log(rng.NextUniformPositive());  // Exp(1)
      sum += v;
    }
    for (double& v : s) v /= sum;
    p.strategies.push_back(std::move(s));
  }
  return p;
}

struct InstanceOutput {
  std::vector<RunRecord> records;
};

InstanceOutput RunInstance(const ExperimentConfig& cfg, int instance_id) {
  uint64_t seed = InstanceSeed(cfg.master_seed, instance_id);
  Rng rng(seed);
  GameSpec game = BuildGameFromDescriptor(cfg.game, rng.NextU64());

  StrategyProfile init;
  if (cfg.init == "uniform") {
    init = UniformProfile(game);
  } else if (cfg.init == "random_interior") {
    init = SampleDirichletProfile(game, rng);
  } else {
    throw ConfigError("unknown init: " + cfg.init);
  }

  LearnerState state =
      MakeInitialState(game, init, cfg.learner.regularizer);

  StrategyProfile perturbed_target;
  if (cfg.track_div_to_perturbed) {
    perturbed_target =
        SolvePerturbedEquilibrium(game, cfg.learner.divergence,
                                  cfg.learner.regularizer, cfg.learner.mu,
                                  state.slingshot, 1e-9)
            .point;
  }
  StrategyProfile nash_point;
  if (cfg.track_dist_to_nash) {
    nash_point = SolveNashSmall(game, 1e-7).point;
  }

  InstanceOutput out;
  auto record = [&](int64_t t) {
    RunRecord r;
    r.instance = instance_id;
    r.t = t;
    r.exploitability = Exploitability(game, state.iterate);
    if (cfg.track_div_to_perturbed) {
      r.div_to_perturbed = ProfileBregman(cfg.learner.regularizer,
                                          perturbed_target, state.iterate);
    }
    if (cfg.track_dist_to_nash) {
      r.dist_to_nash =
          std::sqrt(ProfileSqDistance(state.iterate, nash_point));
    }
    out.records.push_back(r);
  };

  record(0);
  for (int64_t t = 0; t < cfg.horizon; ++t) {
    GradientBundle fb = Observe(game, state.iterate, cfg.feedback, rng);
    Step(state, cfg.learner, fb);
    SlingshotMaybeUpdate(state, cfg.learner);
    int64_t now = t + 1;
    if (now % cfg.record_every == 0 || now == cfg.horizon) record(now);
  }
  return out;
}

}  // namespace

uint64_t InstanceSeed(uint64_t master_seed, int instance_id) {
  return SplitMix64(master_seed + (static_cast<uint64_t>(instance_id) + 1) *
                                      0x9E3779B97F4A7C15ULL);
}

GameSpec BuildGameFromDescriptor(const std::string& descriptor,
                                 uint64_t seed) {
  if (descriptor == "biased_rps") return BuildBiasedRps();
  if (descriptor.rfind("random:", 0) == 0) {
    int actions = std::stoi(descriptor.substr(7));
    return BuildRandomPayoff(3, actions, seed);
  }
  throw ConfigError("unknown game descriptor: " + descriptor +
                    " (expected biased_rps or random:<actions>)");
}

ExperimentResult RunExperiment(const ExperimentConfig& cfg) {
  if (cfg.horizon < 1 || cfg.record_every < 1 || cfg.n_instances < 1) {
    throw ConfigError("horizon, record_every and instances must be >= 1");
  }
  int threads = cfg.threads;
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
  }
  if (const char* cap = std::getenv("SLINGSHOT_MAX_THREADS")) {
    int c = std::atoi(cap);
    if (c >= 1) threads = std::min(threads, c);
  }
  threads = std::min(threads, cfg.n_instances);

  std::vector<InstanceOutput> outputs(cfg.n_instances);
  std::vector<std::string> failures(cfg.n_instances);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int id = next.fetch_add(1);
      if (id >= cfg.n_instances) return;
      try {
        outputs[id] = RunInstance(cfg, id);
      } catch (const std::exception& e) {
        failures[id] = e.what();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (int id = 0; id < cfg.n_instances; ++id) {
    if (!failures[id].empty()) {
      throw ConvergenceError(
          "instance " + std::to_string(id) + " failed: " + failures[id], 0.0);
    }
  }

  ExperimentResult result;
  for (auto& o : outputs) {
    result.records.insert(result.records.end(), o.records.begin(),
                          o.records.end());
  }
  result.summary = Aggregate(result.records);
  return result;
}

std::vector<SummaryRow> Aggregate(const std::vector<RunRecord>& records,
                                  bool /*tracked_div*/, bool /*tracked_nash*/) {
  std::vector<SummaryRow> summary;
  if (records.empty()) return summary;
  // Checkpoints are identical across instances; collect per-t samples in
  // first-seen order (records are instance-major, t-minor).
  std::vector<int64_t> ts;
  std::vector<std::vector<double>> samples;
  for (const auto& r : records) {
    size_t idx = 0;
    for (; idx < ts.size(); ++idx) {
      if (ts[idx] == r.t) break;
    }
    if (idx == ts.size()) {
      ts.push_back(r.t);
      samples.emplace_back();
    }
    samples[idx].push_back(r.exploitability);
  }
  for (size_t i = 0; i < ts.size(); ++i) {
    const auto& xs = samples[i];
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double se = 0.0;
    if (xs.size() > 1) {
      double var = 0.0;
      for (double x : xs) var += (x - mean) * (x - mean);
      var /= static_cast<double>(xs.size() - 1);
      se = std::sqrt(var / static_cast<double>(xs.size()));
    }
    summary.push_back({ts[i], mean, se});
  }
  return summary;
}

std::string RunsCsv(const ExperimentResult& result, bool tracked_div,
                    bool tracked_nash) {
  std::ostringstream os;
  os << "instance,t,exploitability";
  if (tracked_div) os << ",div_to_perturbed";
  if (tracked_nash) os << ",dist_to_nash";
  os << "\n";
  for (const auto& r : result.records) {
    os << r.instance << ',' << r.t << ',' << FormatDouble(r.exploitability);
    if (tracked_div) os << ',' << FormatDouble(r.div_to_perturbed);
    if (tracked_nash) os << ',' << FormatDouble(r.dist_to_nash);
    os << "\n";
  }
  return os.str();
}

std::string SummaryCsv(const ExperimentResult& result) {
  std::ostringstream os;
  os << "t,mean_exploitability,stderr\n";
  for (const auto& s : result.summary) {
    os << s.t << ',' << FormatDouble(s.mean_exploitability) << ','
       << FormatDouble(s.stderr_exploitability) << "\n";
  }
  return os.str();
}

void WriteOutputs(const std::string& out_dir, const ExperimentConfig& cfg,
                  const ExperimentResult& result, bool force) {
  namespace fs = std::filesystem;
  fs::path dir(out_dir);
  if (fs::exists(dir)) {
    if (!fs::is_directory(dir)) {
      throw ConfigError("output path exists and is not a directory: " +
                        out_dir);
    }
    if (!force && !fs::is_empty(dir)) {
      throw ConfigError("output directory not empty (use --force): " +
                        out_dir);
    }
  } else {
    fs::create_directories(dir);
  }
  std::ofstream runs(dir / "runs.csv", std::ios::binary);
  runs << RunsCsv(result, cfg.track_div_to_perturbed, cfg.track_dist_to_nash);
  std::ofstream summary(dir / "summary.csv", std::ios::binary);
  summary << SummaryCsv(result);
}

namespace {

ExperimentConfig BasePreset(const std::string& game, const std::string& init) {
  ExperimentConfig cfg;
  cfg.game = game;
  cfg.init = init;
  cfg.horizon = 100'000;
  cfg.n_instances = 100;
  cfg.record_every = 100;
  cfg.master_seed = 0;
  cfg.threads = 0;
  return cfg;
}

LearnerConfig FtrlSpLearner(const std::string& divergence,
                            const std::string& regularizer, double eta,
                            double mu, int64_t t_sigma) {
  LearnerConfig lc;
  lc.algorithm = Algorithm::kFtrlSp;
  lc.divergence = Divergence::FromName(divergence);
  lc.regularizer = Regularizer::FromName(regularizer);
  lc.mu = mu;
  lc.rate.kind = RateSchedule::Kind::kConstant;
  lc.rate.eta = eta;
  lc.t_sigma = t_sigma;
  return lc;
}

LearnerConfig BaselineLearner(Algorithm a, double eta) {
  LearnerConfig lc;
  lc.algorithm = a;
  lc.regularizer = {a == Algorithm::kOgd ? RegularizerKind::kSquaredL2
                                         : RegularizerKind::kEntropy};
  lc.mu = 0.0;
  lc.rate.kind = RateSchedule::Kind::kConstant;
  lc.rate.eta = eta;
  lc.t_sigma = kNeverUpdate;
  return lc;
}

}  // namespace

std::vector<std::pair<std::string, ExperimentConfig>> BuiltinPresets() {
  std::vector<std::pair<std::string, ExperimentConfig>> presets;
  auto add = [&](const std::string& name, ExperimentConfig cfg) {
    presets.emplace_back(name, std::move(cfg));
  };

  const std::vector<std::pair<std::string, std::string>> games = {
      {"3brps", "biased_rps"}, {"rand10", "random:10"}, {"rand50", "random:50"}};

  for (const auto& [tag, descriptor] : games) {
    // Biased RPS: random interior starts; random payoff games: uniform.
    const std::string init =
        descriptor == "biased_rps" ? "random_interior" : "uniform";
    const bool rand50 = tag == "rand50";

    // Full feedback. eta = 0.1, mu = 0.1; T_sigma = 100 for KL/reverse-KL
    // and 20 for squared l2, except eta = 0.01, mu = 1.0, T_sigma = 200 for
    // squared l2 on the 50-action games.
    {
      ExperimentConfig cfg = BasePreset(descriptor, init);
      cfg.learner = FtrlSpLearner("kl", "entropy", 0.1, 0.1, 100);
      add("fig1_" + tag + "_kl", cfg);
      add("fig1_" + tag, cfg);
      cfg.learner = FtrlSpLearner("reverse_kl", "entropy", 0.1, 0.1, 100);
      add("fig1_" + tag + "_rkl", cfg);
      cfg.learner = rand50 ? FtrlSpLearner("l2", "l2", 0.01, 1.0, 200)
                           : FtrlSpLearner("l2", "l2", 0.1, 0.1, 20);
      add("fig1_" + tag + "_l2", cfg);
      cfg.learner = BaselineLearner(Algorithm::kMwu, 0.1);
      add("fig1_" + tag + "_mwu", cfg);
      cfg.learner = BaselineLearner(Algorithm::kOmwu, 0.1);
      add("fig1_" + tag + "_omwu", cfg);
    }

    // Noisy feedback. eta = 0.01 everywhere; T_sigma = 1000 for
    // KL/reverse-KL and 200 for squared l2, except eta = 0.001,
    // T_sigma = 2000 for squared l2 on the 50-action games.
    {
      ExperimentConfig cfg = BasePreset(descriptor, init);
      cfg.feedback = NoiseModel::Gaussian(0.1);
      cfg.learner = FtrlSpLearner("kl", "entropy", 0.01, 0.1, 1000);
      add("fig2_" + tag + "_kl", cfg);
      add("fig2_" + tag, cfg);
      cfg.learner = FtrlSpLearner("reverse_kl", "entropy", 0.01, 0.1, 1000);
      add("fig2_" + tag + "_rkl", cfg);
      cfg.learner = rand50 ? FtrlSpLearner("l2", "l2", 0.001, 1.0, 2000)
                           : FtrlSpLearner("l2", "l2", 0.01, 0.1, 200);
      add("fig2_" + tag + "_l2", cfg);
      cfg.learner = BaselineLearner(Algorithm::kMwu, 0.01);
      add("fig2_" + tag + "_mwu", cfg);
      cfg.learner = BaselineLearner(Algorithm::kOmwu, 0.01);
      add("fig2_" + tag + "_omwu", cfg);
    }

    // MD-SP / OGD comparison. MD-SP mirrors the FTRL-SP squared-l2
    // settings; OGD uses the same learning rate.
    {
      ExperimentConfig cfg = BasePreset(descriptor, init);
      cfg.learner = rand50 ? FtrlSpLearner("l2", "l2", 0.01, 1.0, 200)
                           : FtrlSpLearner("l2", "l2", 0.1, 0.1, 20);
      cfg.learner.algorithm = Algorithm::kMdSp;
      add("figH_" + tag + "_mdsp", cfg);
      cfg.learner = BaselineLearner(Algorithm::kOgd, rand50 ? 0.01 : 0.1);
      add("figH_" + tag + "_ogd", cfg);

      ExperimentConfig noisy = BasePreset(descriptor, init);
      noisy.feedback = NoiseModel::Gaussian(0.1);
      noisy.learner = rand50 ? FtrlSpLearner("l2", "l2", 0.001, 1.0, 2000)
                             : FtrlSpLearner("l2", "l2", 0.01, 0.1, 200);
      noisy.learner.algorithm = Algorithm::kMdSp;
      add("figH_noisy_" + tag + "_mdsp", noisy);
      noisy.learner =
          BaselineLearner(Algorithm::kOgd, rand50 ? 0.001 : 0.01);
      add("figH_noisy_" + tag + "_ogd", noisy);
    }
  }

  // Slingshot-interval sensitivity sweep on biased RPS, KL perturbation.
  for (int64_t t_sigma : {10, 100, 1000, 10000}) {
    ExperimentConfig cfg = BasePreset("biased_rps", "random_interior");
    cfg.learner = FtrlSpLearner("kl", "entropy", 0.1, 0.1, t_sigma);
    add("figI_tsigma_" + std::to_string(t_sigma), cfg);
    cfg.feedback = NoiseModel::Gaussian(0.1);
    cfg.learner = FtrlSpLearner("kl", "entropy", 0.01, 0.1, t_sigma);
    add("figI_noisy_tsigma_" + std::to_string(t_sigma), cfg);
  }

  return presets;
}

ExperimentConfig PresetByName(const std::string& name) {
  auto presets = BuiltinPresets();
  for (const auto& [n, cfg] : presets) {
    if (n == name) return cfg;
  }
  std::string names;
  for (const auto& [n, cfg] : presets) {
    if (!names.empty()) names += ", ";
    names += n;
  }
  throw ConfigError("unknown preset: " + name + "; valid presets: " + names);
}

void ApplyOption(ExperimentConfig& cfg, const std::string& key,
                 const std::string& value) {
  try {
    if (key == "game") {
      cfg.game = value;
    } else if (key == "init") {
      cfg.init = value;
    } else if (key == "horizon") {
      cfg.horizon = std::stoll(value);
    } else if (key == "instances") {
      cfg.n_instances = std::stoi(value);
    } else if (key == "seed") {
      cfg.master_seed = std::stoull(value);
    } else if (key == "record_every") {
      cfg.record_every = std::stoll(value);
    } else if (key == "threads") {
      cfg.threads = std::stoi(value);
    } else if (key == "track_div_to_perturbed") {
      cfg.track_div_to_perturbed = (value == "true" || value == "1");
    } else if (key == "track_dist_to_nash") {
      cfg.track_dist_to_nash = (value == "true" || value == "1");
    } else if (key == "learner.algorithm") {
      cfg.learner.algorithm = AlgorithmFromName(value);
    } else if (key == "learner.regularizer") {
      cfg.learner.regularizer = Regularizer::FromName(value);
    } else if (key == "learner.divergence") {
      cfg.learner.divergence = Divergence::FromName(value);
    } else if (key == "learner.mu") {
      cfg.learner.mu = std::stod(value);
    } else if (key == "learner.rate") {
      if (value.rfind("constant:", 0) == 0) {
        cfg.learner.rate.kind = RateSchedule::Kind::kConstant;
        cfg.learner.rate.eta = std::stod(value.substr(9));
      } else if (value.rfind("inverse_linear:", 0) == 0) {
        std::string rest = value.substr(15);
        size_t colon = rest.find(':');
        if (colon == std::string::npos) {
          throw ConfigError("inverse_linear rate needs kappa:theta");
        }
        cfg.learner.rate.kind = RateSchedule::Kind::kInverseLinear;
        cfg.learner.rate.kappa = std::stod(rest.substr(0, colon));
        cfg.learner.rate.theta = std::stod(rest.substr(colon + 1));
      } else {
        throw ConfigError("unknown rate: " + value);
      }
    } else if (key == "learner.t_sigma") {
      cfg.learner.t_sigma = (value == "inf") ? kNeverUpdate : std::stoll(value);
      if (cfg.learner.t_sigma < 1) {
        throw ConfigError("t_sigma must be positive or inf");
      }
    } else if (key == "feedback.noise_std") {
      double std_ = std::stod(value);
      cfg.feedback = std_ > 0.0 ? NoiseModel::Gaussian(std_)
                                : NoiseModel::Full();
    } else {
      throw ConfigError("unknown config key: " + key);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError("bad value for " + key + ": " + value + " (" +
                      e.what() + ")");
  }
}

ExperimentConfig ParseConfigText(const std::string& text,
                                 ExperimentConfig base) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value");
    }
    ApplyOption(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

std::string DumpConfig(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "game = " << cfg.game << "\n";
  os << "init = " << cfg.init << "\n";
  os << "horizon = " << cfg.horizon << "\n";
  os << "instances = " << cfg.n_instances << "\n";
  os << "seed = " << cfg.master_seed << "\n";
  os << "record_every = " << cfg.record_every << "\n";
  os << "threads = " << cfg.threads << "\n";
  os << "track_div_to_perturbed = "
     << (cfg.track_div_to_perturbed ? "true" : "false") << "\n";
  os << "track_dist_to_nash = "
     << (cfg.track_dist_to_nash ? "true" : "false") << "\n";
  os << "learner.algorithm = " << AlgorithmName(cfg.learner.algorithm) << "\n";
  os << "learner.regularizer = " << cfg.learner.regularizer.Name() << "\n";
  os << "learner.divergence = " << cfg.learner.divergence.Name() << "\n";
  os << "learner.mu = " << FormatDouble(cfg.learner.mu) << "\n";
  if (cfg.learner.rate.kind == RateSchedule::Kind::kConstant) {
    os << "learner.rate = constant:" << FormatDouble(cfg.learner.rate.eta)
       << "\n";
  } else {
    os << "learner.rate = inverse_linear:"
       << FormatDouble(cfg.learner.rate.kappa) << ":"
       << FormatDouble(cfg.learner.rate.theta) << "\n";
  }
  if (cfg.learner.t_sigma == kNeverUpdate) {
    os << "learner.t_sigma = inf\n";
  } else {
    os << "learner.t_sigma = " << cfg.learner.t_sigma << "\n";
  }
  os << "feedback.noise_std = "
     << FormatDouble(cfg.feedback.gaussian ? cfg.feedback.std : 0.0) << "\n";
  return os.str();
}

}  // namespace slingshot
