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

#include "slingshot/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "slingshot/errors.h"

namespace slingshot {

namespace {

constexpr double kInteriorFloor = 1e-15;

void CheckFinite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw NumericError(std::string(what) + " not finite");
  }
}

void CheckSameSize(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw DimensionError("vector size mismatch");
}

}  // namespace

std::string Regularizer::Name() const {
  switch (kind) {
    case RegularizerKind::kEntropy: return "entropy";
    case RegularizerKind::kLogBarrier: return "log_barrier";
    case RegularizerKind::kSquaredL2: return "l2";
  }
  return "?";
}

Regularizer Regularizer::FromName(const std::string& name) {
  if (name == "entropy") return {RegularizerKind::kEntropy};
  if (name == "log_barrier") return {RegularizerKind::kLogBarrier};
  if (name == "l2") return {RegularizerKind::kSquaredL2};
  throw ConfigError("unknown regularizer: " + name +
                    " (expected entropy, log_barrier, l2)");
}

namespace {

// Shortest decimal that round-trips through FromName, e.g. 0.5 -> "0.5".
std::string FormatAlpha(double alpha) {
  std::ostringstream out;
  out << alpha;
  return out.str();
}

}  // namespace

std::string Divergence::Name() const {
  switch (kind) {
    case DivergenceKind::kKl: return "kl";
    case DivergenceKind::kReverseKl: return "reverse_kl";
    case DivergenceKind::kSquaredL2: return "l2";
    case DivergenceKind::kItakuraSaito: return "itakura_saito";
    case DivergenceKind::kAlpha: return "alpha:" + FormatAlpha(alpha);
    case DivergenceKind::kRenyi: return "renyi:" + FormatAlpha(alpha);
  }
  return "?";
}

Divergence Divergence::FromName(const std::string& name) {
  if (name == "kl") return {DivergenceKind::kKl};
  if (name == "reverse_kl") return {DivergenceKind::kReverseKl};
  if (name == "l2") return {DivergenceKind::kSquaredL2};
  if (name == "itakura_saito") return {DivergenceKind::kItakuraSaito};
  auto parse_alpha = [&](const std::string& prefix) {
    double a = std::stod(name.substr(prefix.size()));
    if (!(a > 0.0 && a < 1.0)) {
      throw ConfigError("alpha must lie in (0, 1), got " + name);
    }
    return a;
  };
  if (name.rfind("alpha:", 0) == 0) {
    return {DivergenceKind::kAlpha, parse_alpha("alpha:")};
  }
  if (name.rfind("renyi:", 0) == 0) {
    return {DivergenceKind::kRenyi, parse_alpha("renyi:")};
  }
  throw ConfigError("unknown divergence: " + name);
}

std::vector<double> FloorSimplex(std::vector<double> x) {
  double sum = 0.0;
  for (double& v : x) {
    if (v < kInteriorFloor) v = kInteriorFloor;
    sum += v;
  }
  for (double& v : x) v /= sum;
  return x;
}

std::vector<double> ProjectToSimplex(const std::vector<double>& y) {
  CheckFinite(y, "projection input");
  std::vector<double> sorted(y);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double cumsum = 0.0;
  double threshold = sorted[0] - 1.0;
  for (size_t k = 0; k < sorted.size(); ++k) {
    cumsum += sorted[k];
    double tau = (cumsum - 1.0) / static_cast<double>(k + 1);
    if (k + 1 == sorted.size() || sorted[k + 1] <= tau) {
      threshold = tau;
      break;
    }
  }
  std::vector<double> x(y.size());
  for (size_t j = 0; j < y.size(); ++j) {
    x[j] = std::max(0.0, y[j] - threshold);
  }
  return x;
}

namespace {

std::vector<double> Softmax(const std::vector<double>& y) {
  double m = *std::max_element(y.begin(), y.end());
  std::vector<double> x(y.size());
  double sum = 0.0;
  for (size_t j = 0; j < y.size(); ++j) {
    x[j] = std::exp(y[j] - m);
    sum += x[j];
  }
  for (double& v : x) v /= sum;
  return x;
}

// Solves sum_j 1/(nu - y_j) = 1 for nu > max(y); the solution gives the
// log-barrier argmax x_j = 1/(nu - y_j). The LHS is strictly decreasing on
// the bracket (max(y), max(y) + d], so bisection always converges; a Newton
// polish then drives the residual below 1e-12.
std::vector<double> LogBarrierArgmax(const std::vector<double>& y) {
  const double d = static_cast<double>(y.size());
  const double ymax = *std::max_element(y.begin(), y.end());
  auto residual = [&](double nu) {
    double s = 0.0;
    for (double v : y) s += 1.0 / (nu - v);
    return s - 1.0;
  };
  double lo = ymax + d * std::numeric_limits<double>::epsilon() *
                         std::max(1.0, std::abs(ymax));
  double hi = ymax + d;
  // residual(hi) <= 0 by construction; widen lo if rounding spoiled it.
  while (residual(lo) < 0.0) lo = ymax + (lo - ymax) / 2.0;
  double nu = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    double r = residual(nu);
    if (std::abs(r) < 1e-12) break;
    if (r > 0.0) {
      lo = nu;
    } else {
      hi = nu;
    }
    // Newton step; fall back to bisection when it leaves the bracket.
    double deriv = 0.0;
    for (double v : y) deriv -= 1.0 / ((nu - v) * (nu - v));
    double next = nu - r / deriv;
    nu = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
  }
  if (std::abs(residual(nu)) > 1e-10) {
    throw ConvergenceError("log-barrier dual solve did not converge",
                           std::abs(residual(nu)));
  }
  std::vector<double> x(y.size());
  for (size_t j = 0; j < y.size(); ++j) x[j] = 1.0 / (nu - y[j]);
  return x;
}

}  // namespace

std::vector<double> MirrorArgmax(const Regularizer& reg,
                                 const std::vector<double>& y) {
  if (y.empty()) throw DimensionError("empty mirror argmax input");
  CheckFinite(y, "mirror argmax input");
  switch (reg.kind) {
    case RegularizerKind::kEntropy:
      return Softmax(y);
    case RegularizerKind::kSquaredL2:
      return ProjectToSimplex(y);
    case RegularizerKind::kLogBarrier:
      return LogBarrierArgmax(y);
  }
  throw ConfigError("unknown regularizer kind");
}

double BregmanDivergence(const Regularizer& reg, const std::vector<double>& x,
                         const std::vector<double>& x0) {
  CheckSameSize(x, x0);
  switch (reg.kind) {
    case RegularizerKind::kEntropy: {
      auto s0 = FloorSimplex(x0);
      double acc = 0.0;
      for (size_t j = 0; j < x.size(); ++j) {
        if (x[j] > 0.0) acc += x[j] * std::log(x[j] / s0[j]);
      }
      return std::max(0.0, acc);
    }
    case RegularizerKind::kLogBarrier: {
      auto xf = FloorSimplex(x);
      auto s0 = FloorSimplex(x0);
      double acc = 0.0;
      for (size_t j = 0; j < x.size(); ++j) {
        double r = xf[j] / s0[j];
        acc += r - std::log(r) - 1.0;
      }
      return std::max(0.0, acc);
    }
    case RegularizerKind::kSquaredL2: {
      double acc = 0.0;
      for (size_t j = 0; j < x.size(); ++j) {
        double dlt = x[j] - x0[j];
        acc += dlt * dlt;
      }
      return 0.5 * acc;
    }
  }
  throw ConfigError("unknown regularizer kind");
}

double DivergenceValue(const Divergence& g, const std::vector<double>& x,
                       const std::vector<double>& s) {
  CheckSameSize(x, s);
  switch (g.kind) {
    case DivergenceKind::kKl:
      return BregmanDivergence({RegularizerKind::kEntropy}, x, s);
    case DivergenceKind::kReverseKl:
      return BregmanDivergence({RegularizerKind::kEntropy}, s, x);
    case DivergenceKind::kSquaredL2:
      return BregmanDivergence({RegularizerKind::kSquaredL2}, x, s);
    case DivergenceKind::kItakuraSaito:
      return BregmanDivergence({RegularizerKind::kLogBarrier}, x, s);
    case DivergenceKind::kAlpha: {
      auto xf = FloorSimplex(x);
      auto sf = FloorSimplex(s);
      double dot = 0.0;
      for (size_t j = 0; j < xf.size(); ++j) {
        dot += std::pow(xf[j], g.alpha) * std::pow(sf[j], 1.0 - g.alpha);
      }
      return std::max(0.0, (1.0 - dot) / (g.alpha * (1.0 - g.alpha)));
    }
    case DivergenceKind::kRenyi: {
      auto xf = FloorSimplex(x);
      auto sf = FloorSimplex(s);
      double dot = 0.0;
      for (size_t j = 0; j < xf.size(); ++j) {
        dot += std::pow(xf[j], g.alpha) * std::pow(sf[j], 1.0 - g.alpha);
      }
      return std::max(0.0, std::log(dot) / (g.alpha - 1.0));
    }
  }
  throw ConfigError("unknown divergence kind");
}

std::vector<double> DivergenceGrad(const Divergence& g,
                                   const std::vector<double>& x,
                                   const std::vector<double>& s) {
  CheckSameSize(x, s);
  auto xf = FloorSimplex(x);
  auto sf = FloorSimplex(s);
  std::vector<double> grad(x.size());
  switch (g.kind) {
    case DivergenceKind::kKl:
      for (size_t j = 0; j < x.size(); ++j) {
        grad[j] = std::log(xf[j] / sf[j]) + 1.0;
      }
      return grad;
    case DivergenceKind::kReverseKl:
      for (size_t j = 0; j < x.size(); ++j) grad[j] = -sf[j] / xf[j];
      return grad;
    case DivergenceKind::kSquaredL2:
      for (size_t j = 0; j < x.size(); ++j) grad[j] = x[j] - s[j];
      return grad;
    case DivergenceKind::kItakuraSaito:
      for (size_t j = 0; j < x.size(); ++j) {
        grad[j] = 1.0 / sf[j] - 1.0 / xf[j];
      }
      return grad;
    case DivergenceKind::kAlpha:
      for (size_t j = 0; j < x.size(); ++j) {
        grad[j] = -std::pow(sf[j] / xf[j], 1.0 - g.alpha) / (1.0 - g.alpha);
      }
      return grad;
    case DivergenceKind::kRenyi: {
      double dot = 0.0;
      for (size_t j = 0; j < x.size(); ++j) {
        dot += std::pow(xf[j], g.alpha) * std::pow(sf[j], 1.0 - g.alpha);
      }
      for (size_t j = 0; j < x.size(); ++j) {
        grad[j] = -(g.alpha / (1.0 - g.alpha)) *
                  std::pow(sf[j] / xf[j], 1.0 - g.alpha) / dot;
      }
      return grad;
    }
  }
  throw ConfigError("unknown divergence kind");
}

std::vector<double> MdProx(const Regularizer& reg,
                           const std::vector<double>& base,
                           const std::vector<double>& g, double eta) {
  CheckSameSize(base, g);
  CheckFinite(g, "prox gradient");
  if (!(eta > 0.0)) throw ConfigError("prox step size must be positive");
  // Each case reduces to a mirror argmax with a shifted dual point.
  switch (reg.kind) {
    case RegularizerKind::kEntropy: {
      auto b = FloorSimplex(base);
      std::vector<double> y(base.size());
      for (size_t j = 0; j < y.size(); ++j) {
        y[j] = std::log(b[j]) + eta * g[j];
      }
      return MirrorArgmax(reg, y);
    }
    case RegularizerKind::kSquaredL2: {
      std::vector<double> y(base.size());
      for (size_t j = 0; j < y.size(); ++j) y[j] = base[j] + eta * g[j];
      return ProjectToSimplex(y);
    }
    case RegularizerKind::kLogBarrier: {
      auto b = FloorSimplex(base);
      std::vector<double> y(base.size());
      for (size_t j = 0; j < y.size(); ++j) {
        y[j] = eta * g[j] - 1.0 / b[j];
      }
      return MirrorArgmax(reg, y);
    }
  }
  throw ConfigError("unknown regularizer kind");
}

RelativeConstants GetRelativeConstants(const Divergence& g,
                                       const Regularizer& reg,
                                       const std::vector<double>& s) {
  if (g.kind == DivergenceKind::kKl && reg.kind == RegularizerKind::kEntropy) {
    return {1.0, 1.0};
  }
  if (g.kind == DivergenceKind::kSquaredL2 &&
      reg.kind == RegularizerKind::kSquaredL2) {
    return {1.0, 1.0};
  }
  if (g.kind == DivergenceKind::kItakuraSaito &&
      reg.kind == RegularizerKind::kLogBarrier) {
    return {1.0, 1.0};
  }
  if (g.kind == DivergenceKind::kReverseKl &&
      reg.kind == RegularizerKind::kLogBarrier) {
    if (s.empty()) throw DimensionError("empty slingshot vector");
    double min_s = *std::min_element(s.begin(), s.end());
    if (min_s <= 0.0) {
      throw DomainError("reverse-KL relative constants need interior s");
    }
    return {1.0, min_s};
  }
  throw UnsupportedCombinationError(
      "no certified relative constants for divergence " + g.Name() +
      " with regularizer " + reg.Name());
}

}  // namespace slingshot
