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

#ifndef SLINGSHOT_LEARNERS_H_
#define SLINGSHOT_LEARNERS_H_

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "slingshot/game.h"
#include "slingshot/geometry.h"
#include "slingshot/rng.h"

namespace slingshot {

enum class Algorithm { kFtrlSp, kMdSp, kMwu, kOmwu, kOgd };

std::string AlgorithmName(Algorithm a);
Algorithm AlgorithmFromName(const std::string& name);

// Learning-rate schedule: constant eta, or eta_t = 1/(kappa t + 2 theta).
struct RateSchedule {
  enum class Kind { kConstant, kInverseLinear } kind = Kind::kConstant;
  double eta = 0.1;
  double kappa = 0.0;
  double theta = 0.0;

  double At(int64_t t) const {
    if (kind == Kind::kConstant) return eta;
    return 1.0 / (kappa * static_cast<double>(t) + 2.0 * theta);
  }
};

// Slingshot update interval; kNeverUpdate fixes the slingshot forever.
inline constexpr int64_t kNeverUpdate = std::numeric_limits<int64_t>::max();

struct LearnerConfig {
  Algorithm algorithm = Algorithm::kFtrlSp;
  Regularizer regularizer{RegularizerKind::kEntropy};
  Divergence divergence{DivergenceKind::kKl};
  double mu = 0.1;
  RateSchedule rate;
  int64_t t_sigma = kNeverUpdate;
  // Off-by-default ablation: also reset the cumulative gradient when the
  // slingshot updates. The reference pseudocode resets only tau and sigma.
  bool reset_cumulative_on_slingshot = false;
};

// Full (exact) or additive Gaussian feedback.
struct NoiseModel {
  bool gaussian = false;
  double std = 0.0;

  static NoiseModel Full() { return {false, 0.0}; }
  static NoiseModel Gaussian(double std) { return {true, std}; }
};

struct LearnerState {
  StrategyProfile iterate;                        // pi^t
  std::vector<std::vector<double>> cumulative;    // y^t
  StrategyProfile slingshot;                      // sigma^k
  GradientBundle prev_feedback;                   // for Omwu/Ogd prediction
  int64_t t = 0;
  int64_t tau = 0;
  int64_t k = 0;
};

// Initial state: iterate = slingshot = init, zero prediction, and the
// cumulative dual set to the mirror image of init under reg (for uniform
// init this differs from zero only along the all-ones direction, which the
// simplex argmax annihilates; for interior init it makes the iterate a
// genuine fixed point of a zero-gradient step).
LearnerState MakeInitialState(const GameSpec& game, const StrategyProfile& init,
                              const Regularizer& reg);

// Gradient feedback. Gaussian noise is drawn player-major,
// coordinate-minor, one variate per coordinate, from the caller's stream.
GradientBundle Observe(const GameSpec& game, const StrategyProfile& profile,
                       const NoiseModel& noise, Rng& rng);

// One update of the configured algorithm. Does not touch the slingshot;
// call SlingshotMaybeUpdate afterwards.
void Step(LearnerState& state, const LearnerConfig& cfg,
          const GradientBundle& fb);

// After tau reaches t_sigma: k += 1, tau = 0, sigma^k <- current iterate.
// Nothing else is reset (unless the ablation flag is on).
void SlingshotMaybeUpdate(LearnerState& state, const LearnerConfig& cfg);

// Theorem-certified step sizes for the supported (G, psi) pairs.
struct CertifiedRate {
  double eta_max = 0.0;  // open-interval upper endpoint for constant eta
  double kappa = 0.0;    // mu gamma / 2
  double theta = 0.0;    // (mu^2 gamma rho^2 (gamma + 2 beta) + 8 L^2) / (2 mu gamma rho^2)
};

CertifiedRate ComputeCertifiedRate(const LearnerConfig& cfg,
                                   const GameSpec& game,
                                   const StrategyProfile& slingshot);

// Upper endpoint of the certified constant-step interval.
double EtaUpperBound(const LearnerConfig& cfg, const GameSpec& game,
                     const StrategyProfile& slingshot);

// min over players of the per-player gamma (beta is 1 for all supported
// pairs; gamma varies only for reverse-KL / log-barrier).
RelativeConstants ProfileRelativeConstants(const LearnerConfig& cfg,
                                           const StrategyProfile& slingshot);

// Sum over players of D_psi(a_i, b_i).
double ProfileBregman(const Regularizer& reg, const StrategyProfile& a,
                      const StrategyProfile& b);

double ProfileSqDistance(const StrategyProfile& a, const StrategyProfile& b);

}  // namespace slingshot

#endif  // SLINGSHOT_LEARNERS_H_
