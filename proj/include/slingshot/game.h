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

#ifndef SLINGSHOT_GAME_H_
#define SLINGSHOT_GAME_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace slingshot {

// Dense row-major matrix of payoffs.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c) {}

  double& operator()(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }
};

// Returns -M^T.
Matrix NegTranspose(const Matrix& m);

// A zero-sum polymatrix game: every ordered pair (i, j), i != j, carries a
// payoff block M^(i,j), with M^(j,i) = -(M^(i,j))^T by construction.
// Player i's payoff is v_i(pi) = sum_{j != i} pi_i^T M^(i,j) pi_j, and each
// player's strategy space is the probability simplex over its actions.
struct GameSpec {
  int n_players = 0;
  std::vector<int> action_counts;
  std::map<std::pair<int, int>, Matrix> blocks;

  const Matrix& Block(int i, int j) const;
};

// One mixed strategy per player.
struct StrategyProfile {
  std::vector<std::vector<double>> strategies;
};

// Per-player payoff gradients, shaped like a StrategyProfile.
struct GradientBundle {
  std::vector<std::vector<double>> grads;
};

// Builds a game from the (i < j) blocks only; reverse blocks are
// materialized as negated transposes so the zero-sum pairing holds exactly.
// Throws DimensionError on bad sizes or non-finite entries.
GameSpec MakeZeroSumPolymatrix(
    int n_players, std::vector<int> action_counts,
    const std::map<std::pair<int, int>, Matrix>& upper_blocks);

// Throws DimensionError if the profile's shape does not match the game, or
// if some strategy is off the simplex by more than 1e-9.
void ValidateProfile(const GameSpec& game, const StrategyProfile& profile);

// Uniform strategy for every player.
StrategyProfile UniformProfile(const GameSpec& game);

// v_i(pi) = sum_{j != i} pi_i^T M^(i,j) pi_j for each player.
std::vector<double> Payoff(const GameSpec& game, const StrategyProfile& profile);

// grads[i] = sum_{j != i} M^(i,j) pi_j.
GradientBundle PayoffGradient(const GameSpec& game, const StrategyProfile& profile);

// sum_i (max_a grads[i][a] - v_i(pi)); the inner best response is attained
// at a simplex vertex because v_i is linear in pi_i. Clamped to 0 when the
// value is within -1e-9 of zero.
double Exploitability(const GameSpec& game, const StrategyProfile& profile);

// sum_i <grad_i(p) - grad_i(q), p_i - q_i>; exactly 0 (to rounding) for
// zero-sum polymatrix games.
double MonotonicityResidual(const GameSpec& game, const StrategyProfile& p,
                            const StrategyProfile& q);

// Certified Lipschitz constant of the joint gradient operator: the spectral
// norm of the stacked block matrix, via power iteration on B^T B
// (tolerance 1e-10, at most 10000 iterations).
double LipschitzBound(const GameSpec& game);

// Certified upper bound zeta on sqrt(sum_i ||grad_i(pi)||^2) over the
// product of simplices. Each M pi_j is a convex combination of columns of
// M, so ||M pi_j|| is bounded by the largest column norm.
double GradientNormBound(const GameSpec& game);

// Three-player biased rock-paper-scissors; every ordered pair carries the
// same antisymmetric 3x3 block.
GameSpec BuildBiasedRps();

// Random payoff game: one block per unordered pair with entries i.i.d.
// uniform on [-1, 1], deterministic given the seed. Draw order: pairs
// (i, j) with i < j in lexicographic order, entries row-major.
GameSpec BuildRandomPayoff(int n_players, int actions, uint64_t seed);

// JSON round trip; only (i < j) blocks are stored, the loader rebuilds the
// reverse blocks. Player indices are 0-based.
nlohmann::json GameToJson(const GameSpec& game);
GameSpec GameFromJson(const nlohmann::json& j);

}  // namespace slingshot

#endif  // SLINGSHOT_GAME_H_
