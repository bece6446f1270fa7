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

#ifndef SLINGSHOT_ORACLES_H_
#define SLINGSHOT_ORACLES_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "slingshot/game.h"
#include "slingshot/geometry.h"
#include "slingshot/learners.h"

namespace slingshot {

struct OracleResult {
  StrategyProfile point;
  double residual = 0.0;
  int64_t iterations = 0;
};

// First-order optimality violation of the perturbed game at pi:
// max_i max_a < grad_i v_i(pi) - mu grad G(pi_i, sigma_i), e_a - pi_i >.
// Nonpositive (up to tolerance) exactly at the perturbed equilibrium.
double PerturbedStationarityResidual(const GameSpec& game, const Divergence& g,
                                     double mu, const StrategyProfile& sigma,
                                     const StrategyProfile& pi);

// Solves for the perturbed equilibrium (the fixed point of the perturbed
// best-response problem) by running the perturbed follow-the-leader
// dynamics with fixed slingshot at a certified step size
// (0.9 * the constant-step upper bound) until the stationarity residual
// drops below tol. Throws ConvergenceError past max_iterations.
OracleResult SolvePerturbedEquilibrium(const GameSpec& game,
                                       const Divergence& g,
                                       const Regularizer& reg, double mu,
                                       const StrategyProfile& sigma,
                                       double tol,
                                       int64_t max_iterations = 10'000'000,
                                       const StrategyProfile* start = nullptr);

// Nash equilibrium of a small zero-sum polymatrix game by anchored damping:
// repeatedly re-anchor sigma at the squared-l2 perturbed equilibrium
// (mu = 1) until exploitability(sigma) <= tol. The reported residual is the
// exploitability, which certifies the answer on its own.
OracleResult SolveNashSmall(const GameSpec& game, double tol,
                            int64_t max_outer = 100'000);

// Central differences along the tangent directions (e_j - e_d)/sqrt(2);
// returns the gradient of f projected onto the simplex tangent space
// (components summing to zero). x must be interior with margin > h.
std::vector<double> FiniteDifferenceGrad(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x, double h = 1e-6);

// D0 * (1 - eta mu gamma / 2)^t, the constant-step contraction envelope.
double RateEnvelopeFull(double d0, double eta, double mu, double gamma,
                        int64_t t);

// Decreasing-step envelope:
//   (2 theta - kappa)/(kappa t + 2 theta) * D0
//   + N C^2 / (rho (kappa t + 2 theta)) * (log(kappa t/(2 theta) + 1)/kappa
//                                          + 1/(2 theta)).
double RateEnvelopeNoisy(double d0, double kappa, double theta, int n_players,
                         double c, double rho, int64_t t);

}  // namespace slingshot

#endif  // SLINGSHOT_ORACLES_H_
