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

#include "slingshot/oracles.h"

#include <algorithm>
#include <cmath>

#include "slingshot/errors.h"

namespace slingshot {

double PerturbedStationarityResidual(const GameSpec& game, const Divergence& g,
                                     double mu, const StrategyProfile& sigma,
                                     const StrategyProfile& pi) {
  GradientBundle grad = PayoffGradient(game, pi);
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < game.n_players; ++i) {
    std::vector<double> eff = grad.grads[i];
    if (mu > 0.0) {
      auto pert = DivergenceGrad(g, pi.strategies[i], sigma.strategies[i]);
      for (size_t j = 0; j < eff.size(); ++j) eff[j] -= mu * pert[j];
    }
    double inner = 0.0;
    for (size_t j = 0; j < eff.size(); ++j) inner += eff[j] * pi.strategies[i][j];
    for (double v : eff) worst = std::max(worst, v - inner);
  }
  return worst;
}

OracleResult SolvePerturbedEquilibrium(const GameSpec& game,
                                       const Divergence& g,
                                       const Regularizer& reg, double mu,
                                       const StrategyProfile& sigma,
                                       double tol, int64_t max_iterations,
                                       const StrategyProfile* start) {
  ValidateProfile(game, sigma);
  LearnerConfig cfg;
  cfg.algorithm = Algorithm::kFtrlSp;
  cfg.regularizer = reg;
  cfg.divergence = g;
  cfg.mu = mu;
  cfg.t_sigma = kNeverUpdate;
  cfg.rate.kind = RateSchedule::Kind::kConstant;
  cfg.rate.eta = 0.9 * EtaUpperBound(cfg, game, sigma);

  LearnerState state =
      MakeInitialState(game, start != nullptr ? *start : UniformProfile(game),
                       reg);
  state.slingshot = sigma;

  NoiseModel full = NoiseModel::Full();
  Rng rng(0);  // unused under full feedback
  double best = std::numeric_limits<double>::infinity();
  // Residual checks are much more expensive than steps; amortize.
  const int64_t check_every = 32;
  for (int64_t it = 0; it < max_iterations; ++it) {
    Step(state, cfg, Observe(game, state.iterate, full, rng));
    if ((it + 1) % check_every == 0 || it + 1 == max_iterations) {
      double r =
          PerturbedStationarityResidual(game, g, mu, sigma, state.iterate);
      best = std::min(best, r);
      if (r <= tol) {
        return {state.iterate, r, it + 1};
      }
    }
  }
  throw ConvergenceError("perturbed equilibrium solve hit iteration cap",
                         best);
}

OracleResult SolveNashSmall(const GameSpec& game, double tol,
                            int64_t max_outer) {
  const Divergence l2_div{DivergenceKind::kSquaredL2};
  const Regularizer l2_reg{RegularizerKind::kSquaredL2};
  StrategyProfile sigma = UniformProfile(game);
  int64_t total_iterations = 0;
  double expl = Exploitability(game, sigma);
  for (int64_t k = 0; k < max_outer; ++k) {
    if (expl <= tol) return {sigma, expl, total_iterations};
    // Inner tolerance tied to the current exploitability so early anchors
    // are cheap.
    double inner_tol = std::max(tol * 1e-2, std::min(1e-6, expl * 1e-3));
    OracleResult inner = SolvePerturbedEquilibrium(
        game, l2_div, l2_reg, /*mu=*/1.0, sigma, inner_tol);
    total_iterations += inner.iterations;
    sigma = inner.point;
    expl = Exploitability(game, sigma);
  }
  throw ConvergenceError("anchored damping hit outer iteration cap", expl);
}

std::vector<double> FiniteDifferenceGrad(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x, double h) {
  const size_t d = x.size();
  if (d < 2) throw DimensionError("need at least 2 coordinates");
  for (double v : x) {
    if (v <= h) throw DomainError("point too close to the simplex boundary");
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  // Directional derivatives along u_j = (e_j - e_d)/sqrt(2), j < d.
  std::vector<double> a(d, 0.0);
  for (size_t j = 0; j + 1 < d; ++j) {
    std::vector<double> xp = x;
    std::vector<double> xm = x;
    xp[j] += h * inv_sqrt2;
    xp[d - 1] -= h * inv_sqrt2;
    xm[j] -= h * inv_sqrt2;
    xm[d - 1] += h * inv_sqrt2;
    double df = (f(xp) - f(xm)) / (2.0 * h);
    a[j] = std::sqrt(2.0) * df;  // = g_j - g_d for the tangent gradient g
  }
  // Recover g with sum g = 0: g_j = a_j - mean(a), a_d = 0.
  double mean = 0.0;
  for (double v : a) mean += v;
  mean /= static_cast<double>(d);
  for (double& v : a) v -= mean;
  return a;
}

double RateEnvelopeFull(double d0, double eta, double mu, double gamma,
                        int64_t t) {
  double r = eta * mu * gamma / 2.0;
  if (!(r > 0.0 && r < 1.0)) {
    throw DomainError("contraction ratio outside (0, 1)");
  }
  return d0 * std::pow(1.0 - r, static_cast<double>(t));
}

double RateEnvelopeNoisy(double d0, double kappa, double theta, int n_players,
                         double c, double rho, int64_t t) {
  if (!(theta > kappa && kappa > 0.0)) {
    throw DomainError("need theta > kappa > 0");
  }
  double denom = kappa * static_cast<double>(t) + 2.0 * theta;
  double bias = (2.0 * theta - kappa) / denom * d0;
  double noise = static_cast<double>(n_players) * c * c / (rho * denom) *
                 (std::log(kappa * static_cast<double>(t) / (2.0 * theta) + 1.0) /
                      kappa +
                  1.0 / (2.0 * theta));
  return bias + noise;
}

}  // namespace slingshot
