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

#include "slingshot/checks.h"

#include <cmath>
#include <cstdio>
#include <functional>

#include "slingshot/errors.h"
#include "slingshot/game.h"
#include "slingshot/geometry.h"
#include "slingshot/learners.h"
#include "slingshot/oracles.h"
#include "slingshot/rng.h"

namespace slingshot {

namespace {

bool Report(const char* what, bool ok, double value) {
  std::printf("  [%s] %s (%.3g)\n", ok ? "ok" : "FAIL", what, value);
  return ok;
}

std::vector<double> RandomInterior(Rng& rng, int d) {
  std::vector<double> x(d);
  double sum = 0.0;
  for (double& v : x) {
    v = 0.05 + rng.NextUniform();
    sum += v;
  }
  for (double& v : x) v /= sum;
  return x;
}

double TangentRelError(const std::vector<double>& analytic,
                       const std::vector<double>& fd) {
  // Compare modulo constants along the all-ones direction.
  double mean = 0.0;
  for (double v : analytic) mean += v;
  mean /= static_cast<double>(analytic.size());
  double num = 0.0;
  double den = 0.0;
  for (size_t j = 0; j < analytic.size(); ++j) {
    double a = analytic[j] - mean;
    num += (a - fd[j]) * (a - fd[j]);
    den += fd[j] * fd[j];
  }
  return std::sqrt(num) / std::max(1e-12, std::sqrt(den));
}

bool CheckGradients() {
  Rng rng(7);
  bool ok = true;
  const char* names[] = {"kl", "reverse_kl", "l2",
                         "itakura_saito", "alpha:0.3", "renyi:0.7"};
  for (const char* name : names) {
    Divergence g = Divergence::FromName(name);
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      auto x = RandomInterior(rng, 4);
      auto s = RandomInterior(rng, 4);
      auto fd = FiniteDifferenceGrad(
          [&](const std::vector<double>& p) { return DivergenceValue(g, p, s); },
          x);
      worst = std::max(worst, TangentRelError(DivergenceGrad(g, x, s), fd));
    }
    ok &= Report(name, worst < 1e-6, worst);
  }
  // Payoff gradient vs finite differences of the payoff, per player.
  GameSpec game = BuildBiasedRps();
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    StrategyProfile p;
    for (int i = 0; i < 3; ++i) p.strategies.push_back(RandomInterior(rng, 3));
    GradientBundle grad = PayoffGradient(game, p);
    for (int i = 0; i < 3; ++i) {
      auto fd = FiniteDifferenceGrad(
          [&](const std::vector<double>& x) {
            StrategyProfile q = p;
            q.strategies[i] = x;
            return Payoff(game, q)[i];
          },
          p.strategies[i]);
      worst = std::max(worst, TangentRelError(grad.grads[i], fd));
    }
  }
  ok &= Report("payoff gradient", worst < 1e-6, worst);
  return ok;
}

// Exact projection by enumerating active sets; exponential in d, used only
// as an oracle for small d.
std::vector<double> BruteForceProjection(const std::vector<double>& y) {
  const int d = static_cast<int>(y.size());
  std::vector<double> best;
  double best_obj = std::numeric_limits<double>::infinity();
  for (int mask = 1; mask < (1 << d); ++mask) {
    int count = 0;
    double sum = 0.0;
    for (int j = 0; j < d; ++j) {
      if (mask & (1 << j)) {
        ++count;
        sum += y[j];
      }
    }
    double shift = (sum - 1.0) / count;
    std::vector<double> x(d, 0.0);
    bool feasible = true;
    for (int j = 0; j < d; ++j) {
      if (mask & (1 << j)) {
        x[j] = y[j] - shift;
        if (x[j] < 0.0) feasible = false;
      }
    }
    if (!feasible) continue;
    double obj = 0.0;
    for (int j = 0; j < d; ++j) obj += (x[j] - y[j]) * (x[j] - y[j]);
    if (obj < best_obj) {
      best_obj = obj;
      best = std::move(x);
    }
  }
  return best;
}

bool CheckProjection() {
  Rng rng(11);
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    int d = 2 + static_cast<int>(rng.NextU64() % 5);
    std::vector<double> y(d);
    for (double& v : y) v = 4.0 * rng.NextUniformSymmetric();
    auto fast = ProjectToSimplex(y);
    auto brute = BruteForceProjection(y);
    for (int j = 0; j < d; ++j) {
      worst = std::max(worst, std::abs(fast[j] - brute[j]));
    }
  }
  bool ok = Report("sort-threshold vs active-set oracle", worst <= 1e-10,
                   worst);
  // Log-barrier argmax KKT residual: max_j |x_j (nu - y_j) - 1| rewritten
  // through the recovered multiplier.
  Rng rng2(13);
  double worst_kkt = 0.0;
  Regularizer lb{RegularizerKind::kLogBarrier};
  for (int rep = 0; rep < 200; ++rep) {
    int d = 2 + static_cast<int>(rng2.NextU64() % 5);
    std::vector<double> y(d);
    for (double& v : y) v = 3.0 * rng2.NextUniformSymmetric();
    auto x = MirrorArgmax(lb, y);
    // nu - y_j = 1/x_j for every j; recover nu from coordinate 0.
    double nu = y[0] + 1.0 / x[0];
    double sum = 0.0;
    for (int j = 0; j < d; ++j) {
      worst_kkt = std::max(worst_kkt, std::abs(x[j] * (nu - y[j]) - 1.0));
      sum += x[j];
    }
    worst_kkt = std::max(worst_kkt, std::abs(sum - 1.0));
  }
  ok &= Report("log-barrier argmax KKT residual", worst_kkt < 1e-10,
               worst_kkt);
  return ok;
}

bool CheckContraction() {
  GameSpec game = BuildBiasedRps();
  LearnerConfig cfg;
  cfg.algorithm = Algorithm::kFtrlSp;
  cfg.regularizer = {RegularizerKind::kEntropy};
  cfg.divergence = {DivergenceKind::kKl};
  cfg.mu = 0.1;
  cfg.t_sigma = kNeverUpdate;
  StrategyProfile sigma = UniformProfile(game);
  cfg.rate.eta = 0.9 * EtaUpperBound(cfg, game, sigma);

  OracleResult oracle = SolvePerturbedEquilibrium(
      game, cfg.divergence, cfg.regularizer, cfg.mu, sigma, 1e-10);

  // Start somewhere asymmetric so D0 > 0.
  StrategyProfile init = UniformProfile(game);
  init.strategies[0] = {0.7, 0.2, 0.1};
  LearnerState state = MakeInitialState(game, init, cfg.regularizer);
  state.slingshot = sigma;
  double d0 = ProfileBregman(cfg.regularizer, oracle.point, state.iterate);
  NoiseModel full = NoiseModel::Full();
  Rng rng(0);
  double worst_excess = 0.0;
  for (int64_t t = 1; t <= 2000; ++t) {
    Step(state, cfg, Observe(game, state.iterate, full, rng));
    double d = ProfileBregman(cfg.regularizer, oracle.point, state.iterate);
    double envelope = RateEnvelopeFull(d0, cfg.rate.eta, cfg.mu, 1.0, t);
    worst_excess = std::max(worst_excess, d - envelope);
  }
  return Report("divergence under contraction envelope",
                worst_excess <= 1e-8, worst_excess);
}

bool CheckSlingshot() {
  GameSpec game = BuildBiasedRps();
  StrategyProfile nash;
  nash.strategies = {{0.2, 0.6, 0.2}, {0.2, 0.6, 0.2}, {0.2, 0.6, 0.2}};
  bool ok = true;
  const std::pair<const char*, const char*> pairs[] = {
      {"kl", "entropy"}, {"l2", "l2"}, {"reverse_kl", "log_barrier"},
      {"itakura_saito", "log_barrier"}};
  for (const auto& [gname, rname] : pairs) {
    OracleResult res = SolvePerturbedEquilibrium(
        game, Divergence::FromName(gname), Regularizer::FromName(rname),
        /*mu=*/0.1, nash, 1e-9);
    double dist = std::sqrt(ProfileSqDistance(res.point, nash));
    std::string what = std::string("equilibrium slingshot fixed under ") +
                       gname + "/" + rname;
    ok &= Report(what.c_str(), dist < 1e-7, dist);
  }
  return ok;
}

}  // namespace

std::vector<std::string> CheckSuiteNames() {
  return {"gradients", "projection", "contraction", "slingshot"};
}

bool RunCheckSuite(const std::string& name) {
  std::printf("suite %s:\n", name.c_str());
  if (name == "gradients") return CheckGradients();
  if (name == "projection") return CheckProjection();
  if (name == "contraction") return CheckContraction();
  if (name == "slingshot") return CheckSlingshot();
  std::string names;
  for (const auto& n : CheckSuiteNames()) names += " " + n;
  throw ConfigError("unknown check suite: " + name + "; valid:" + names);
}

}  // namespace slingshot
