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

#ifndef SLINGSHOT_GEOMETRY_H_
#define SLINGSHOT_GEOMETRY_H_

#include <string>
#include <vector>

namespace slingshot {

// Regularizer psi for the mirror step. All three are 1-strongly convex on
// the simplex (entropy and log-barrier by their Hessians, squared l2
// trivially), so rho() is always 1.
enum class RegularizerKind { kEntropy, kLogBarrier, kSquaredL2 };

struct Regularizer {
  RegularizerKind kind = RegularizerKind::kEntropy;

  double rho() const { return 1.0; }
  std::string Name() const;
  static Regularizer FromName(const std::string& name);
};

// Perturbation divergence G(x, s), minimized (= 0) at x = s.
enum class DivergenceKind {
  kKl,
  kReverseKl,
  kSquaredL2,
  kItakuraSaito,
  kAlpha,
  kRenyi,
};

struct Divergence {
  DivergenceKind kind = DivergenceKind::kKl;
  double alpha = 0.0;  // in (0, 1); Alpha/Renyi only

  std::string Name() const;
  // Accepts "kl", "reverse_kl", "l2", "itakura_saito", "alpha:<f>",
  // "renyi:<f>".
  static Divergence FromName(const std::string& name);
};

// Assumption constants: G is beta-smooth and gamma-strongly convex relative
// to psi.
struct RelativeConstants {
  double beta = 0.0;
  double gamma = 0.0;
};

// Clamps entries to >= 1e-15 and renormalizes. Applied before any
// log/ratio evaluation; the dynamics stay interior analytically but finite
// precision can underflow.
std::vector<double> FloorSimplex(std::vector<double> x);

// Euclidean projection onto the simplex, O(d log d) sort-and-threshold.
std::vector<double> ProjectToSimplex(const std::vector<double>& y);

// argmax_{x in simplex} <y, x> - psi(x).
// Entropy: shift-stabilized softmax. SquaredL2: Euclidean projection.
// LogBarrier: x_j = 1/(nu - y_j) with nu solved by bisection + Newton
// polish to |sum x - 1| < 1e-12.
std::vector<double> MirrorArgmax(const Regularizer& reg,
                                 const std::vector<double>& y);

// Bregman divergence D_psi(x, x0): KL for entropy, Itakura-Saito for
// log-barrier, half squared distance for squared l2.
double BregmanDivergence(const Regularizer& reg, const std::vector<double>& x,
                         const std::vector<double>& x0);

double DivergenceValue(const Divergence& g, const std::vector<double>& x,
                       const std::vector<double>& s);

// Gradient of G with respect to the first argument. The KL gradient keeps
// its +1 component; constants along the all-ones direction are annihilated
// by the simplex argmax.
std::vector<double> DivergenceGrad(const Divergence& g,
                                   const std::vector<double>& x,
                                   const std::vector<double>& s);

// argmax_{x in simplex} eta <g, x> - D_psi(x, base).
std::vector<double> MdProx(const Regularizer& reg,
                           const std::vector<double>& base,
                           const std::vector<double>& g, double eta);

// Tabulated (beta, gamma) for the certified pairs:
//   (KL, Entropy) -> (1, 1)
//   (SquaredL2, SquaredL2) -> (1, 1)
//   (ItakuraSaito, LogBarrier) -> (1, 1)
//   (ReverseKL, LogBarrier) -> (1, min_j s_j)
// Anything else throws UnsupportedCombinationError; no numerical estimation
// is attempted since a guessed constant would invalidate the certified
// step-size bound.
RelativeConstants GetRelativeConstants(const Divergence& g,
                                       const Regularizer& reg,
                                       const std::vector<double>& s);

}  // namespace slingshot

#endif  // SLINGSHOT_GEOMETRY_H_
