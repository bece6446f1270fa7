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

#include "slingshot/learners.h"

#include <algorithm>
#include <cmath>

#include "slingshot/errors.h"

namespace slingshot {

std::string AlgorithmName(Algorithm a) {
  switch (a) {
    case Algorithm::kFtrlSp: return "ftrl_sp";
    case Algorithm::kMdSp: return "md_sp";
    case Algorithm::kMwu: return "mwu";
    case Algorithm::kOmwu: return "omwu";
    case Algorithm::kOgd: return "ogd";
  }
  return "?";
}

Algorithm AlgorithmFromName(const std::string& name) {
  if (name == "ftrl_sp") return Algorithm::kFtrlSp;
  if (name == "md_sp") return Algorithm::kMdSp;
  if (name == "mwu") return Algorithm::kMwu;
  if (name == "omwu") return Algorithm::kOmwu;
  if (name == "ogd") return Algorithm::kOgd;
  throw ConfigError("unknown algorithm: " + name +
                    " (expected ftrl_sp, md_sp, mwu, omwu, ogd)");
}

LearnerState MakeInitialState(const GameSpec& game,
                              const StrategyProfile& init,
                              const Regularizer& reg) {
  ValidateProfile(game, init);
  LearnerState state;
  state.iterate = init;
  state.slingshot = init;
  for (int i = 0; i < game.n_players; ++i) {
    const std::vector<double> x = FloorSimplex(init.strategies[i]);
    std::vector<double> y(x.size(), 0.0);
    switch (reg.kind) {
      case RegularizerKind::kEntropy:
        for (std::size_t j = 0; j < x.size(); ++j) y[j] = std::log(x[j]);
        break;
      case RegularizerKind::kLogBarrier:
        for (std::size_t j = 0; j < x.size(); ++j) y[j] = -1.0 / x[j];
        break;
      case RegularizerKind::kSquaredL2:
        y = x;
        break;
    }
    state.cumulative.push_back(std::move(y));
    state.prev_feedback.grads.emplace_back(game.action_counts[i], 0.0);
  }
  return state;
}

GradientBundle Observe(const GameSpec& game, const StrategyProfile& profile,
                       const NoiseModel& noise, Rng& rng) {
  GradientBundle g = PayoffGradient(game, profile);
  if (noise.gaussian && noise.std > 0.0) {
    for (auto& grad : g.grads) {
      for (double& v : grad) v += noise.std * rng.NextGaussian();
    }
  }
  return g;
}

namespace {

void CheckShapes(const LearnerState& state, const GradientBundle& fb) {
  if (fb.grads.size() != state.iterate.strategies.size()) {
    throw DimensionError("feedback player count mismatch");
  }
  for (size_t i = 0; i < fb.grads.size(); ++i) {
    if (fb.grads[i].size() != state.iterate.strategies[i].size()) {
      throw DimensionError("feedback length mismatch");
    }
  }
}

void FtrlSpStep(LearnerState& state, const LearnerConfig& cfg,
                const GradientBundle& fb) {
  const double eta = cfg.rate.At(state.t);
  for (size_t i = 0; i < fb.grads.size(); ++i) {
    auto& y = state.cumulative[i];
    const auto& pi = state.iterate.strategies[i];
    std::vector<double> pert(pi.size(), 0.0);
    if (cfg.mu > 0.0) {
      pert = DivergenceGrad(cfg.divergence, pi, state.slingshot.strategies[i]);
    }
    for (size_t j = 0; j < y.size(); ++j) {
      y[j] += eta * (fb.grads[i][j] - cfg.mu * pert[j]);
      if (!std::isfinite(y[j])) throw NumericError("cumulative gradient blew up");
    }
    state.iterate.strategies[i] = MirrorArgmax(cfg.regularizer, y);
  }
}

void MdSpStep(LearnerState& state, const LearnerConfig& cfg,
              const GradientBundle& fb) {
  const double eta = cfg.rate.At(state.t);
  for (size_t i = 0; i < fb.grads.size(); ++i) {
    const auto& pi = state.iterate.strategies[i];
    std::vector<double> g = fb.grads[i];
    if (cfg.mu > 0.0) {
      auto pert =
          DivergenceGrad(cfg.divergence, pi, state.slingshot.strategies[i]);
      for (size_t j = 0; j < g.size(); ++j) g[j] -= cfg.mu * pert[j];
    }
    state.iterate.strategies[i] = MdProx(cfg.regularizer, pi, g, eta);
  }
}

void MwuStep(LearnerState& state, const LearnerConfig& cfg,
             const GradientBundle& fb, bool optimistic) {
  const Regularizer entropy{RegularizerKind::kEntropy};
  const double eta = cfg.rate.At(state.t);
  for (size_t i = 0; i < fb.grads.size(); ++i) {
    auto& y = state.cumulative[i];
    for (size_t j = 0; j < y.size(); ++j) y[j] += eta * fb.grads[i][j];
    if (optimistic) {
      // Optimistic FTRL: the freshest feedback doubles as the prediction
      // for the next round.
      std::vector<double> pred(y.size());
      for (size_t j = 0; j < y.size(); ++j) {
        pred[j] = y[j] + eta * fb.grads[i][j];
      }
      state.iterate.strategies[i] = MirrorArgmax(entropy, pred);
    } else {
      state.iterate.strategies[i] = MirrorArgmax(entropy, y);
    }
  }
}

void OgdStep(LearnerState& state, const LearnerConfig& cfg,
             const GradientBundle& fb) {
  const double eta = cfg.rate.At(state.t);
  for (size_t i = 0; i < fb.grads.size(); ++i) {
    auto& pi = state.iterate.strategies[i];
    std::vector<double> y(pi.size());
    for (size_t j = 0; j < pi.size(); ++j) {
      // Past extrapolation: 2 g_t - g_{t-1}.
      y[j] = pi[j] +
             eta * (2.0 * fb.grads[i][j] - state.prev_feedback.grads[i][j]);
    }
    pi = ProjectToSimplex(y);
  }
}

}  // namespace

void Step(LearnerState& state, const LearnerConfig& cfg,
          const GradientBundle& fb) {
  CheckShapes(state, fb);
  switch (cfg.algorithm) {
    case Algorithm::kFtrlSp:
      FtrlSpStep(state, cfg, fb);
      break;
    case Algorithm::kMdSp:
      MdSpStep(state, cfg, fb);
      break;
    case Algorithm::kMwu:
      MwuStep(state, cfg, fb, /*optimistic=*/false);
      break;
    case Algorithm::kOmwu:
      MwuStep(state, cfg, fb, /*optimistic=*/true);
      break;
    case Algorithm::kOgd:
      OgdStep(state, cfg, fb);
      break;
  }
  state.prev_feedback = fb;
  state.t += 1;
  state.tau += 1;
}

void SlingshotMaybeUpdate(LearnerState& state, const LearnerConfig& cfg) {
  if (cfg.t_sigma == kNeverUpdate || state.tau < cfg.t_sigma) return;
  state.k += 1;
  state.tau = 0;
  state.slingshot = state.iterate;
  if (cfg.reset_cumulative_on_slingshot) {
    for (auto& y : state.cumulative) std::fill(y.begin(), y.end(), 0.0);
  }
}

RelativeConstants ProfileRelativeConstants(const LearnerConfig& cfg,
                                           const StrategyProfile& slingshot) {
  RelativeConstants out{1.0, std::numeric_limits<double>::infinity()};
  for (const auto& s : slingshot.strategies) {
    RelativeConstants rc = GetRelativeConstants(cfg.divergence,
                                                cfg.regularizer, s);
    out.beta = std::max(out.beta, rc.beta);
    out.gamma = std::min(out.gamma, rc.gamma);
  }
  return out;
}

CertifiedRate ComputeCertifiedRate(const LearnerConfig& cfg,
                                   const GameSpec& game,
                                   const StrategyProfile& slingshot) {
  if (!(cfg.mu > 0.0)) throw ConfigError("certified rates require mu > 0");
  RelativeConstants rc = ProfileRelativeConstants(cfg, slingshot);
  const double rho = cfg.regularizer.rho();
  const double L = LipschitzBound(game);
  const double denom =
      cfg.mu * cfg.mu * rc.gamma * rho * rho * (rc.gamma + 2.0 * rc.beta) +
      8.0 * L * L;
  CertifiedRate rate;
  rate.eta_max = 2.0 * cfg.mu * rc.gamma * rho * rho / denom;
  rate.kappa = cfg.mu * rc.gamma / 2.0;
  rate.theta = denom / (2.0 * cfg.mu * rc.gamma * rho * rho);
  return rate;
}

double EtaUpperBound(const LearnerConfig& cfg, const GameSpec& game,
                     const StrategyProfile& slingshot) {
  return ComputeCertifiedRate(cfg, game, slingshot).eta_max;
}

double ProfileBregman(const Regularizer& reg, const StrategyProfile& a,
                      const StrategyProfile& b) {
  if (a.strategies.size() != b.strategies.size()) {
    throw DimensionError("profile player count mismatch");
  }
  double acc = 0.0;
  for (size_t i = 0; i < a.strategies.size(); ++i) {
    acc += BregmanDivergence(reg, a.strategies[i], b.strategies[i]);
  }
  return acc;
}

double ProfileSqDistance(const StrategyProfile& a, const StrategyProfile& b) {
  if (a.strategies.size() != b.strategies.size()) {
    throw DimensionError("profile player count mismatch");
  }
  double acc = 0.0;
  for (size_t i = 0; i < a.strategies.size(); ++i) {
    if (a.strategies[i].size() != b.strategies[i].size()) {
      throw DimensionError("profile length mismatch");
    }
    for (size_t j = 0; j < a.strategies[i].size(); ++j) {
      double d = a.strategies[i][j] - b.strategies[i][j];
      acc += d * d;
    }
  }
  return acc;
}

}  // namespace slingshot
