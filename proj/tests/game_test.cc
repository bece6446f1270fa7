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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "slingshot/errors.h"
#include "slingshot/game.h"
#include "slingshot/oracles.h"
#include "test_util.h"

using namespace slingshot;
using slingshot_test::RandomProfile;

namespace {

GameSpec TwoPlayerScalar(double v) {
  Matrix m(1, 1);
  m(0, 0) = v;
  return MakeZeroSumPolymatrix(2, {1, 1}, {{{0, 1}, m}});
}

}  // namespace

TEST_CASE("biased rps block entries match the reference table") {
  GameSpec game = BuildBiasedRps();
  const Matrix& m = game.Block(0, 1);
  CHECK(m(0, 2) == doctest::Approx(1.0));
  CHECK(m(0, 1) == doctest::Approx(-1.0 / 3.0));
  CHECK(m(1, 0) == doctest::Approx(1.0 / 3.0));
  CHECK(m(2, 0) == doctest::Approx(-1.0));
  // Antisymmetric block: reverse block equals the forward block.
  const Matrix& rev = game.Block(1, 0);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) CHECK(rev(r, c) == doctest::Approx(m(r, c)));
  }
}

TEST_CASE("payoffs are zero at uniform and sum to zero everywhere") {
  GameSpec game = BuildBiasedRps();
  auto payoffs = Payoff(game, UniformProfile(game));
  for (double v : payoffs) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));

  Rng rng(1);
  for (int rep = 0; rep < 50; ++rep) {
    auto p = RandomProfile(rng, game);
    auto vs = Payoff(game, p);
    CHECK(std::abs(vs[0] + vs[1] + vs[2]) < 1e-9);
  }
}

TEST_CASE("two-player scalar game payoffs") {
  GameSpec game = TwoPlayerScalar(1.0);
  StrategyProfile p;
  p.strategies = {{1.0}, {1.0}};
  auto vs = Payoff(game, p);
  CHECK(vs[0] == doctest::Approx(1.0));
  CHECK(vs[1] == doctest::Approx(-1.0));
}

TEST_CASE("biased rps vertex payoffs by hand evaluation") {
  // pi_1 = R, pi_2 = P, pi_3 = S. With M from the table:
  // v_1 = M(R,P) + M(R,S) = -1/3 + 1 = 2/3
  // v_2 = M(P,R) + M(P,S) = 1/3 - 1/3 = 0
  // v_3 = M(S,R) + M(S,P) = -1 + 1/3 = -2/3
  GameSpec game = BuildBiasedRps();
  StrategyProfile p;
  p.strategies = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  auto vs = Payoff(game, p);
  CHECK(vs[0] == doctest::Approx(2.0 / 3.0));
  CHECK(vs[1] == doctest::Approx(0.0));
  CHECK(vs[2] == doctest::Approx(-2.0 / 3.0));
  CHECK(vs[0] + vs[1] + vs[2] == doctest::Approx(0.0));
}

TEST_CASE("payoff gradient at uniform") {
  GameSpec game = BuildBiasedRps();
  GradientBundle g = PayoffGradient(game, UniformProfile(game));
  for (int i = 0; i < 3; ++i) {
    CHECK(g.grads[i][0] == doctest::Approx(4.0 / 9.0));
    CHECK(g.grads[i][1] == doctest::Approx(0.0));
    CHECK(g.grads[i][2] == doctest::Approx(-4.0 / 9.0));
  }
}

TEST_CASE("payoff gradient matches finite differences") {
  GameSpec game = BuildBiasedRps();
  Rng rng(2);
  for (int rep = 0; rep < 100; ++rep) {
    auto p = RandomProfile(rng, game);
    GradientBundle g = PayoffGradient(game, p);
    for (int i = 0; i < 3; ++i) {
      auto fd = FiniteDifferenceGrad(
          [&](const std::vector<double>& x) {
            StrategyProfile q = p;
            q.strategies[i] = x;
            return Payoff(game, q)[i];
          },
          p.strategies[i]);
      // Compare on the tangent space.
      double mean = (g.grads[i][0] + g.grads[i][1] + g.grads[i][2]) / 3.0;
      for (int j = 0; j < 3; ++j) {
        CHECK(std::abs(g.grads[i][j] - mean - fd[j]) <
              1e-6 * (1.0 + std::abs(fd[j])));
      }
    }
  }
}

TEST_CASE("gradient of a zero game is zero") {
  GameSpec game = TwoPlayerScalar(0.0);
  StrategyProfile p;
  p.strategies = {{1.0}, {1.0}};
  GradientBundle g = PayoffGradient(game, p);
  CHECK(g.grads[0][0] == 0.0);
  CHECK(g.grads[1][0] == 0.0);
}

TEST_CASE("exploitability at uniform and at the equilibrium") {
  GameSpec game = BuildBiasedRps();
  CHECK(Exploitability(game, UniformProfile(game)) ==
        doctest::Approx(4.0 / 3.0));

  StrategyProfile nash;
  nash.strategies = {{0.2, 0.6, 0.2}, {0.2, 0.6, 0.2}, {0.2, 0.6, 0.2}};
  CHECK(Exploitability(game, nash) <= 1e-9);

  // Brute-force best response over vertices agrees at uniform.
  auto uniform = UniformProfile(game);
  auto payoffs = Payoff(game, uniform);
  double brute = 0.0;
  for (int i = 0; i < 3; ++i) {
    double best = -1e9;
    for (int a = 0; a < 3; ++a) {
      StrategyProfile dev = uniform;
      dev.strategies[i] = {0, 0, 0};
      dev.strategies[i][a] = 1.0;
      best = std::max(best, Payoff(game, dev)[i]);
    }
    brute += best - payoffs[i];
  }
  CHECK(brute == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("degenerate single-action game has zero exploitability") {
  GameSpec game = TwoPlayerScalar(3.0);
  StrategyProfile p;
  p.strategies = {{1.0}, {1.0}};
  CHECK(Exploitability(game, p) == 0.0);
}

TEST_CASE("monotonicity residual vanishes for zero-sum polymatrix games") {
  GameSpec game = BuildBiasedRps();
  Rng rng(3);
  for (int rep = 0; rep < 100; ++rep) {
    auto p = RandomProfile(rng, game);
    auto q = RandomProfile(rng, game);
    double sq = std::sqrt(ProfileSqDistance(p, q));
    CHECK(std::abs(MonotonicityResidual(game, p, q)) <= 1e-9 * (1.0 + sq));
  }
  auto p = RandomProfile(rng, game);
  CHECK(MonotonicityResidual(game, p, p) == 0.0);
}

TEST_CASE("monotonicity residual detects a non-zero-sum fixture") {
  // Coordination game: both blocks are the identity (not a negated
  // transpose pair), so the pairing is broken on purpose.
  GameSpec game = TwoPlayerScalar(1.0);
  Matrix id(2, 2);
  id(0, 0) = id(1, 1) = 1.0;
  game.n_players = 2;
  game.action_counts = {2, 2};
  game.blocks.clear();
  game.blocks[{0, 1}] = id;
  game.blocks[{1, 0}] = id;
  StrategyProfile p, q;
  p.strategies = {{1.0, 0.0}, {1.0, 0.0}};
  q.strategies = {{0.0, 1.0}, {0.0, 1.0}};
  CHECK(std::abs(MonotonicityResidual(game, p, q)) > 0.5);
}

TEST_CASE("lipschitz bound matches the dense spectral oracle") {
  CHECK(LipschitzBound(TwoPlayerScalar(2.0)) == doctest::Approx(2.0));
  CHECK(LipschitzBound(TwoPlayerScalar(0.0)) == doctest::Approx(0.0));

  GameSpec rps = BuildBiasedRps();
  double power = LipschitzBound(rps);
  double dense = slingshot_test::DenseSpectralNormOracle(rps);
  CHECK(power == doctest::Approx(dense).epsilon(1e-8));

  GameSpec rand = BuildRandomPayoff(3, 4, 99);
  CHECK(LipschitzBound(rand) ==
        doctest::Approx(slingshot_test::DenseSpectralNormOracle(rand))
            .epsilon(1e-8));
}

TEST_CASE("lipschitz bound certifies the smoothness inequality on samples") {
  GameSpec game = BuildBiasedRps();
  double L = LipschitzBound(game);
  Rng rng(4);
  for (int rep = 0; rep < 1000; ++rep) {
    auto p = RandomProfile(rng, game);
    auto q = RandomProfile(rng, game);
    GradientBundle gp = PayoffGradient(game, p);
    GradientBundle gq = PayoffGradient(game, q);
    double grad_sq = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double d = gp.grads[i][j] - gq.grads[i][j];
        grad_sq += d * d;
      }
    }
    CHECK(grad_sq <= L * L * ProfileSqDistance(p, q) + 1e-12);
  }
}

TEST_CASE("gradient norm bound certifies sampled gradient norms") {
  CHECK(GradientNormBound(TwoPlayerScalar(0.0)) == doctest::Approx(0.0));
  CHECK(GradientNormBound(TwoPlayerScalar(1.0)) ==
        doctest::Approx(std::sqrt(2.0)));

  GameSpec game = BuildBiasedRps();
  double zeta = GradientNormBound(game);
  CHECK(zeta > 0.0);
  Rng rng(5);
  for (int rep = 0; rep < 10000; ++rep) {
    auto p = RandomProfile(rng, game, /*margin=*/0.0);
    GradientBundle g = PayoffGradient(game, p);
    double norm_sq = 0.0;
    for (const auto& gi : g.grads) {
      for (double v : gi) norm_sq += v * v;
    }
    CHECK(norm_sq <= zeta * zeta + 1e-12);
  }
}

TEST_CASE("random payoff games are deterministic and in range") {
  GameSpec a = BuildRandomPayoff(3, 10, 42);
  GameSpec b = BuildRandomPayoff(3, 10, 42);
  for (const auto& [key, m] : a.blocks) {
    const Matrix& other = b.Block(key.first, key.second);
    CHECK(m.data == other.data);
    for (double v : m.data) {
      CHECK(v >= -1.0);
      CHECK(v <= 1.0);
    }
  }
  GameSpec c = BuildRandomPayoff(3, 10, 43);
  CHECK(a.Block(0, 1).data != c.Block(0, 1).data);

  Rng rng(6);
  for (int rep = 0; rep < 20; ++rep) {
    auto p = RandomProfile(rng, a);
    auto q = RandomProfile(rng, a);
    CHECK(std::abs(MonotonicityResidual(a, p, q)) < 1e-9);
  }
}

TEST_CASE("shape mismatches raise dimension errors") {
  GameSpec game = BuildBiasedRps();
  StrategyProfile bad;
  bad.strategies = {{0.5, 0.5}, {1, 0, 0}, {1, 0, 0}};
  CHECK_THROWS_AS(Payoff(game, bad), DimensionError);
  CHECK_THROWS_AS(PayoffGradient(game, bad), DimensionError);
  CHECK_THROWS_AS(MakeZeroSumPolymatrix(1, {2}, {}), DimensionError);
  CHECK_THROWS_AS(BuildRandomPayoff(1, 2, 0), DimensionError);
  CHECK_THROWS_AS(BuildRandomPayoff(2, 0, 0), DimensionError);

  StrategyProfile off;
  off.strategies = {{0.6, 0.6, -0.2}, {1, 0, 0}, {1, 0, 0}};
  CHECK_THROWS_AS(Payoff(game, off), DimensionError);
}

TEST_CASE("json round trip preserves the game") {
  GameSpec game = BuildRandomPayoff(3, 5, 7);
  GameSpec back = GameFromJson(GameToJson(game));
  CHECK(back.n_players == game.n_players);
  CHECK(back.action_counts == game.action_counts);
  REQUIRE(back.blocks.size() == game.blocks.size());
  for (const auto& [key, m] : game.blocks) {
    CHECK(back.Block(key.first, key.second).data == m.data);
  }
}
