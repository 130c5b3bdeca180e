// Copyright 2026 The Beamsel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "beamsel/gain_model.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <string>

#include "beamsel/error.h"

namespace beamsel {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool AllFinite(const Vec3& v) { return v.allFinite(); }

void CheckCovariance(const Cov3& sigma, int agent_index) {
  const std::string who = "agent " + std::to_string(agent_index + 1);
  if (!sigma.allFinite()) {
    throw Error(ErrorKind::kModel, who + ": covariance has non-finite entries");
  }
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw Error(ErrorKind::kModel, who + ": covariance is not symmetric");
  }
  const Cov3 sym = 0.5 * (sigma + sigma.transpose());
  Eigen::SelfAdjointEigenSolver<Cov3> solver(sym, Eigen::EigenvaluesOnly);
  const double trace = std::abs(sym.trace());
  if (solver.eigenvalues().minCoeff() < -1e-12 * trace ||
      (trace == 0.0 && solver.eigenvalues().minCoeff() < 0.0)) {
    throw Error(ErrorKind::kModel,
                who + ": covariance is not positive semidefinite");
  }
}

void CheckGammaIndex(const GammaVector& gammas, IndexSet s) {
  if (s.Extent() > gammas.size()) {
    throw Error(ErrorKind::kInput,
                "subset {" + s.ToOneBasedString() + "} exceeds " +
                    std::to_string(gammas.size()) + " agents");
  }
}

// 1 - exp(-x) without cancellation for small x.
double OneMinusExp(double x) { return -std::expm1(-x); }

}  // namespace

Scenario ValidateScenario(Scenario scenario) {
  if (!(scenario.wavelength > 0.0) || !std::isfinite(scenario.wavelength)) {
    throw Error(ErrorKind::kGeometry, "wavelength must be positive and finite");
  }
  if (!AllFinite(scenario.client)) {
    throw Error(ErrorKind::kGeometry, "client position is not finite");
  }
  if (scenario.client.norm() == 0.0) {
    throw Error(ErrorKind::kGeometry, "client position has zero norm");
  }
  const int n = static_cast<int>(scenario.agents.size());
  if (n < 1 || n > IndexSet::kMaxElements) {
    throw Error(ErrorKind::kInput,
                "agent count " + std::to_string(n) + " outside [1, 64]");
  }
  for (int i = 0; i < n; ++i) {
    AgentGeometry& agent = scenario.agents[i];
    if (!AllFinite(agent.mu)) {
      throw Error(ErrorKind::kGeometry,
                  "agent " + std::to_string(i + 1) + ": mean is not finite");
    }
    CheckCovariance(agent.sigma, i);
    if (!std::isfinite(agent.eta)) {
      throw Error(ErrorKind::kInput,
                  "agent " + std::to_string(i + 1) + ": eta is not finite");
    }
    agent.eta = std::fmod(agent.eta, kTwoPi);
    if (agent.eta < 0.0) agent.eta += kTwoPi;
    if (agent.eta >= kTwoPi) agent.eta = 0.0;
  }
  return scenario;
}

PhaseStats EffectiveError(const Scenario& scenario, int agent_index) {
  if (agent_index < 0 ||
      agent_index >= static_cast<int>(scenario.agents.size())) {
    throw Error(ErrorKind::kInput,
                "agent index " + std::to_string(agent_index) + " out of range");
  }
  if (!(scenario.wavelength > 0.0)) {
    throw Error(ErrorKind::kGeometry, "wavelength must be positive");
  }
  const double norm = scenario.client.norm();
  if (norm == 0.0) {
    throw Error(ErrorKind::kGeometry, "client position has zero norm");
  }
  const AgentGeometry& agent = scenario.agents[agent_index];
  CheckCovariance(agent.sigma, agent_index);

  const double lambda = scenario.wavelength;
  const Vec3 direction = scenario.client / norm;
  PhaseStats stats;
  stats.rho = -(kTwoPi / lambda) * agent.mu.dot(direction);
  const double quad = scenario.client.dot(agent.sigma * scenario.client);
  stats.gamma = std::max(
      0.0, 4.0 * std::numbers::pi * std::numbers::pi / (norm * norm * lambda *
                                                        lambda) * quad);
  return stats;
}

GammaVector::GammaVector(std::vector<double> gammas)
    : gammas_(std::move(gammas)) {
  if (gammas_.empty() ||
      gammas_.size() > static_cast<size_t>(IndexSet::kMaxElements)) {
    throw Error(ErrorKind::kInput, "gamma vector length " +
                                       std::to_string(gammas_.size()) +
                                       " outside [1, 64]");
  }
  for (size_t i = 0; i < gammas_.size(); ++i) {
    if (!std::isfinite(gammas_[i]) || gammas_[i] < 0.0) {
      throw Error(ErrorKind::kInput,
                  "gamma[" + std::to_string(i + 1) +
                      "] must be finite and nonnegative");
    }
  }
}

GammaVector::GammaVector(std::initializer_list<double> gammas)
    : GammaVector(std::vector<double>(gammas)) {}

GammaVector GammasFromScenario(const Scenario& scenario) {
  std::vector<double> gammas;
  gammas.reserve(scenario.agents.size());
  for (int i = 0; i < static_cast<int>(scenario.agents.size()); ++i) {
    gammas.push_back(EffectiveError(scenario, i).gamma);
  }
  return GammaVector(std::move(gammas));
}

int WrappedNormalTruncation(double gamma, double tail_tol) {
  const double log_arg = 2.0 / (tail_tol * std::sqrt(kTwoPi * gamma));
  const double reach = std::sqrt(2.0 * gamma * std::max(0.0, std::log(log_arg)));
  return static_cast<int>(std::ceil(reach / kTwoPi)) + 1;
}

double WrappedNormalPdf(double y, double gamma, double tail_tol) {
  if (!(y >= 0.0 && y < kTwoPi)) {
    throw Error(ErrorKind::kInput, "wrapped pdf argument outside [0, 2*pi)");
  }
  if (!(tail_tol > 0.0 && tail_tol <= 1e-6)) {
    throw Error(ErrorKind::kInput, "tail_tol must lie in (0, 1e-6]");
  }
  if (gamma == 0.0) {
    throw Error(ErrorKind::kDegenerate,
                "zero effective error is a point mass; the density is undefined");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorKind::kInput, "gamma must be positive and finite");
  }
  const int reach = WrappedNormalTruncation(gamma, tail_tol);
  double sum = 0.0;
  // Outermost images first so the small terms are not swamped.
  for (int k = reach; k >= 1; --k) {
    const double lo = y - kTwoPi * k;
    const double hi = y + kTwoPi * k;
    sum += std::exp(-lo * lo / (2.0 * gamma)) +
           std::exp(-hi * hi / (2.0 * gamma));
  }
  sum += std::exp(-y * y / (2.0 * gamma));
  return sum / std::sqrt(kTwoPi * gamma);
}

double ExpectedGain(const GammaVector& gammas, IndexSet s) {
  CheckGammaIndex(gammas, s);
  // |S| + 2 sum_{j < i} sqrt(v_i) sqrt(v_j), accumulated through a running
  // prefix so every step is monotone in each sqrt(v).
  double prefix = 0.0;
  double cross = 0.0;
  s.ForEach([&](int i) {
    const double root = std::exp(-0.5 * gammas[i]);
    cross += root * prefix;
    prefix += root;
  });
  return static_cast<double>(s.size()) + 2.0 * cross;
}

double GainVariance(const GammaVector& gammas, IndexSet s) {
  CheckGammaIndex(gammas, s);
  const int n = s.size();
  if (n <= 1) return 0.0;
  const std::vector<int> idx = s.ToVector();
  std::vector<double> root(n);
  std::vector<double> gap(n);  // 1 - v_i
  for (int a = 0; a < n; ++a) {
    root[a] = std::exp(-0.5 * gammas[idx[a]]);
    gap[a] = OneMinusExp(gammas[idx[a]]);
  }

  double pair_term = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const double d = OneMinusExp(gammas[idx[a]] + gammas[idx[b]]);
      pair_term += d * d;
    }
  }
  pair_term *= 2.0;

  // For each i, sum over ordered pairs j != k in S \ {i} of sqrt(v_j v_k).
  double triple_term = 0.0;
  for (int a = 0; a < n; ++a) {
    if (gap[a] == 0.0) continue;
    double prefix = 0.0;
    double ordered_pairs = 0.0;
    for (int b = 0; b < n; ++b) {
      if (b == a) continue;
      ordered_pairs += root[b] * prefix;
      prefix += root[b];
    }
    triple_term += gap[a] * gap[a] * 2.0 * ordered_pairs;
  }
  triple_term *= 2.0;

  return pair_term + triple_term;
}

GainStats ComputeGainStats(const GammaVector& gammas, IndexSet s) {
  return GainStats{ExpectedGain(gammas, s), GainVariance(gammas, s)};
}

double MaxExpectedGain(const GammaVector& gammas) {
  return ExpectedGain(gammas, gammas.FullSet());
}

SummationIdentitySides EvaluateSummationIdentity(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  if (n < 1 || n > 8) {
    throw Error(ErrorKind::kInput, "identity check needs 1..8 values");
  }
  double pairs = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j != i) pairs += x[i] * x[j];
    }
  }
  SummationIdentitySides sides;
  sides.lhs = pairs * pairs;

  double squares = 0.0;
  double triples = 0.0;
  double quads = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      squares += x[i] * x[i] * x[j] * x[j];
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        triples += x[i] * x[i] * x[j] * x[k];
        for (int l = 0; l < n; ++l) {
          if (l == i || l == j || l == k) continue;
          quads += x[i] * x[j] * x[k] * x[l];
        }
      }
    }
  }
  sides.rhs = 2.0 * squares + 4.0 * triples + quads;
  return sides;
}

double SummationIdentityResidual(std::span<const double> x) {
  const SummationIdentitySides sides = EvaluateSummationIdentity(x);
  return std::abs(sides.lhs - sides.rhs);
}

}  // namespace beamsel
