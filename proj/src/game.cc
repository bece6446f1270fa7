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

#include "slingshot/game.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "slingshot/errors.h"
#include "slingshot/rng.h"

namespace slingshot {

namespace {

constexpr double kSimplexTol = 1e-9;

bool AllFinite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

}  // namespace

Matrix NegTranspose(const Matrix& m) {
  Matrix out(m.cols, m.rows);
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) {
      out(c, r) = -m(r, c);
    }
  }
  return out;
}

const Matrix& GameSpec::Block(int i, int j) const {
  auto it = blocks.find({i, j});
  if (it == blocks.end()) {
    throw DimensionError("no block for player pair (" + std::to_string(i) +
                         ", " + std::to_string(j) + ")");
  }
  return it->second;
}

GameSpec MakeZeroSumPolymatrix(
    int n_players, std::vector<int> action_counts,
    const std::map<std::pair<int, int>, Matrix>& upper_blocks) {
  if (n_players < 2) throw DimensionError("need at least 2 players");
  if (static_cast<int>(action_counts.size()) != n_players) {
    throw DimensionError("action_counts size != n_players");
  }
  for (int d : action_counts) {
    if (d < 1) throw DimensionError("action count must be positive");
  }
  GameSpec game;
  game.n_players = n_players;
  game.action_counts = std::move(action_counts);
  for (const auto& [key, m] : upper_blocks) {
    auto [i, j] = key;
    if (i < 0 || j < 0 || i >= n_players || j >= n_players || i >= j) {
      throw DimensionError("upper blocks must be keyed by (i, j) with i < j");
    }
    if (m.rows != game.action_counts[i] || m.cols != game.action_counts[j]) {
      throw DimensionError("block shape mismatch for pair (" +
                           std::to_string(i) + ", " + std::to_string(j) + ")");
    }
    if (!AllFinite(m.data)) throw DimensionError("non-finite block entry");
    game.blocks[{i, j}] = m;
    game.blocks[{j, i}] = NegTranspose(m);
  }
  return game;
}

void ValidateProfile(const GameSpec& game, const StrategyProfile& profile) {
  if (static_cast<int>(profile.strategies.size()) != game.n_players) {
    throw DimensionError("profile has wrong number of players");
  }
  for (int i = 0; i < game.n_players; ++i) {
    const auto& s = profile.strategies[i];
    if (static_cast<int>(s.size()) != game.action_counts[i]) {
      throw DimensionError("strategy length mismatch for player " +
                           std::to_string(i));
    }
    double sum = 0.0;
    for (double x : s) {
      if (!std::isfinite(x) || x < -kSimplexTol) {
        throw DimensionError("strategy entry off the simplex");
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > kSimplexTol) {
      throw DimensionError("strategy does not sum to 1");
    }
  }
}

StrategyProfile UniformProfile(const GameSpec& game) {
  StrategyProfile p;
  p.strategies.reserve(game.n_players);
  for (int d : game.action_counts) {
    p.strategies.emplace_back(d, 1.0 / d);
  }
  return p;
}

std::vector<double> Payoff(const GameSpec& game, const StrategyProfile& profile) {
  ValidateProfile(game, profile);
  std::vector<double> payoffs(game.n_players, 0.0);
  for (int i = 0; i < game.n_players; ++i) {
    const auto& pi = profile.strategies[i];
    for (int j = 0; j < game.n_players; ++j) {
      if (j == i || game.blocks.find({i, j}) == game.blocks.end()) continue;
      const Matrix& m = game.Block(i, j);
      const auto& pj = profile.strategies[j];
      double acc = 0.0;
      for (int r = 0; r < m.rows; ++r) {
        double row = 0.0;
        for (int c = 0; c < m.cols; ++c) row += m(r, c) * pj[c];
        acc += pi[r] * row;
      }
      payoffs[i] += acc;
    }
  }
  return payoffs;
}

GradientBundle PayoffGradient(const GameSpec& game,
                              const StrategyProfile& profile) {
  ValidateProfile(game, profile);
  GradientBundle g;
  g.grads.reserve(game.n_players);
  for (int i = 0; i < game.n_players; ++i) {
    std::vector<double> grad(game.action_counts[i], 0.0);
    for (int j = 0; j < game.n_players; ++j) {
      if (j == i || game.blocks.find({i, j}) == game.blocks.end()) continue;
      const Matrix& m = game.Block(i, j);
      const auto& pj = profile.strategies[j];
      for (int r = 0; r < m.rows; ++r) {
        double row = 0.0;
        for (int c = 0; c < m.cols; ++c) row += m(r, c) * pj[c];
        grad[r] += row;
      }
    }
    g.grads.push_back(std::move(grad));
  }
  return g;
}

double Exploitability(const GameSpec& game, const StrategyProfile& profile) {
  GradientBundle g = PayoffGradient(game, profile);
  std::vector<double> payoffs = Payoff(game, profile);
  double total = 0.0;
  for (int i = 0; i < game.n_players; ++i) {
    double best = *std::max_element(g.grads[i].begin(), g.grads[i].end());
    total += best - payoffs[i];
  }
  if (total < 0.0) {
    if (total < -kSimplexTol) {
      throw NumericError("negative exploitability beyond tolerance");
    }
    total = 0.0;
  }
  return total;
}

double MonotonicityResidual(const GameSpec& game, const StrategyProfile& p,
                            const StrategyProfile& q) {
  GradientBundle gp = PayoffGradient(game, p);
  GradientBundle gq = PayoffGradient(game, q);
  double acc = 0.0;
  for (int i = 0; i < game.n_players; ++i) {
    for (int a = 0; a < game.action_counts[i]; ++a) {
      acc += (gp.grads[i][a] - gq.grads[i][a]) *
             (p.strategies[i][a] - q.strategies[i][a]);
    }
  }
  return acc;
}

namespace {

// Applies the stacked block matrix B (zero diagonal blocks) to a vector laid
// out player-major, then B^T. Used by the power iteration on B^T B.
std::vector<double> ApplyBlockMatrix(const GameSpec& game,
                                     const std::vector<double>& x,
                                     bool transpose) {
  int total = std::accumulate(game.action_counts.begin(),
                              game.action_counts.end(), 0);
  std::vector<int> offset(game.n_players, 0);
  for (int i = 1; i < game.n_players; ++i) {
    offset[i] = offset[i - 1] + game.action_counts[i - 1];
  }
  std::vector<double> y(total, 0.0);
  for (const auto& [key, m] : game.blocks) {
    auto [i, j] = key;
    for (int r = 0; r < m.rows; ++r) {
      for (int c = 0; c < m.cols; ++c) {
        if (!transpose) {
          y[offset[i] + r] += m(r, c) * x[offset[j] + c];
        } else {
          y[offset[j] + c] += m(r, c) * x[offset[i] + r];
        }
      }
    }
  }
  return y;
}

double Norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

double LipschitzBound(const GameSpec& game) {
  int total = std::accumulate(game.action_counts.begin(),
                              game.action_counts.end(), 0);
  if (game.blocks.empty()) return 0.0;
  Rng rng(0x51u);
  std::vector<double> v(total);
  for (double& x : v) x = rng.NextUniformSymmetric();
  double nv = Norm2(v);
  if (nv == 0.0) v[0] = nv = 1.0;
  for (double& x : v) x /= nv;

  double lambda = 0.0;
  for (int it = 0; it < 10000; ++it) {
    std::vector<double> w =
        ApplyBlockMatrix(game, ApplyBlockMatrix(game, v, false), true);
    double nw = Norm2(w);
    if (nw == 0.0) return 0.0;  // started in the kernel of a zero game
    for (double& x : w) x /= nw;
    double prev = lambda;
    lambda = nw;
    v = std::move(w);
    if (it > 0 && std::abs(lambda - prev) <= 1e-10 * std::max(1.0, lambda)) {
      break;
    }
  }
  return std::sqrt(lambda);
}

double GradientNormBound(const GameSpec& game) {
  double acc = 0.0;
  for (int i = 0; i < game.n_players; ++i) {
    double per_player = 0.0;
    for (int j = 0; j < game.n_players; ++j) {
      if (j == i || game.blocks.find({i, j}) == game.blocks.end()) continue;
      const Matrix& m = game.Block(i, j);
      double max_col = 0.0;
      for (int c = 0; c < m.cols; ++c) {
        double col = 0.0;
        for (int r = 0; r < m.rows; ++r) col += m(r, c) * m(r, c);
        max_col = std::max(max_col, std::sqrt(col));
      }
      per_player += max_col;
    }
    acc += per_player * per_player;
  }
  return std::sqrt(acc);
}

GameSpec BuildBiasedRps() {
  Matrix m(3, 3);
  const double third = 1.0 / 3.0;
  m(0, 0) = 0.0;    m(0, 1) = -third; m(0, 2) = 1.0;
  m(1, 0) = third;  m(1, 1) = 0.0;    m(1, 2) = -third;
  m(2, 0) = -1.0;   m(2, 1) = third;  m(2, 2) = 0.0;
  std::map<std::pair<int, int>, Matrix> upper;
  upper[{0, 1}] = m;
  upper[{0, 2}] = m;
  upper[{1, 2}] = m;
  return MakeZeroSumPolymatrix(3, {3, 3, 3}, upper);
}

GameSpec BuildRandomPayoff(int n_players, int actions, uint64_t seed) {
  if (n_players < 2) throw DimensionError("need at least 2 players");
  if (actions < 1) throw DimensionError("need at least 1 action");
  Rng rng(seed);
  std::map<std::pair<int, int>, Matrix> upper;
  for (int i = 0; i < n_players; ++i) {
    for (int j = i + 1; j < n_players; ++j) {
      Matrix m(actions, actions);
      for (double& x : m.data) x = rng.NextUniformSymmetric();
      upper[{i, j}] = std::move(m);
    }
  }
  return MakeZeroSumPolymatrix(n_players,
                               std::vector<int>(n_players, actions), upper);
}

nlohmann::json GameToJson(const GameSpec& game) {
  nlohmann::json j;
  j["n_players"] = game.n_players;
  j["action_counts"] = game.action_counts;
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& [key, m] : game.blocks) {
    auto [i, jj] = key;
    if (i >= jj) continue;
    nlohmann::json b;
    b["i"] = i;
    b["j"] = jj;
    std::vector<std::vector<double>> rows(m.rows);
    for (int r = 0; r < m.rows; ++r) {
      rows[r].assign(m.data.begin() + static_cast<size_t>(r) * m.cols,
                     m.data.begin() + static_cast<size_t>(r + 1) * m.cols);
    }
    b["matrix"] = rows;
    blocks.push_back(std::move(b));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

GameSpec GameFromJson(const nlohmann::json& j) {
  int n_players = j.at("n_players").get<int>();
  auto counts = j.at("action_counts").get<std::vector<int>>();
  std::map<std::pair<int, int>, Matrix> upper;
  for (const auto& b : j.at("blocks")) {
    int i = b.at("i").get<int>();
    int jj = b.at("j").get<int>();
    auto rows = b.at("matrix").get<std::vector<std::vector<double>>>();
    if (rows.empty()) throw DimensionError("empty block matrix");
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int r = 0; r < m.rows; ++r) {
      if (static_cast<int>(rows[r].size()) != m.cols) {
        throw DimensionError("ragged block matrix");
      }
      for (int c = 0; c < m.cols; ++c) m(r, c) = rows[r][c];
    }
    upper[{i, jj}] = std::move(m);
  }
  return MakeZeroSumPolymatrix(n_players, std::move(counts), upper);
}

}  // namespace slingshot
