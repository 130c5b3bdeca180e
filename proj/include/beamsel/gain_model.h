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

// Statistical model of the beamforming gain under Gaussian localization
// error: geometry to per-agent effective error, the wrapped normal phase
// density, and closed-form mean and variance of the gain for any subset.

#ifndef BEAMSEL_GAIN_MODEL_H_
#define BEAMSEL_GAIN_MODEL_H_

#include <Eigen/Core>
#include <span>
#include <vector>

#include "beamsel/index_set.h"

namespace beamsel {

using Vec3 = Eigen::Vector3d;  // meters
using Cov3 = Eigen::Matrix3d;  // meters^2

struct AgentGeometry {
  Vec3 mu = Vec3::Zero();
  Cov3 sigma = Cov3::Zero();
  // Channel phase. It cancels under the mean-aligning phase adjustment, so
  // the reduced problem never reads it; carried for completeness.
  double eta = 0.0;
};

struct Scenario {
  Vec3 client = Vec3::Zero();
  double wavelength = 0.0;
  std::vector<AgentGeometry> agents;
};

// Checks every scenario invariant (finite vectors, symmetric PSD
// covariances, positive wavelength, nonzero client, 1..64 agents) and
// normalizes each eta into [0, 2*pi). Throws Error on the first violation.
Scenario ValidateScenario(Scenario scenario);

struct PhaseStats {
  double rho = 0.0;    // mean of the unwrapped phase offset, radians
  double gamma = 0.0;  // effective error, radians^2
};

// Phase offset statistics of agent `agent_index` (zero-based), projecting
// the agent's position distribution on the client direction.
PhaseStats EffectiveError(const Scenario& scenario, int agent_index);

// Per-agent effective errors, one entry per agent. Entries are >= 0 and
// finite; length is in [1, 64].
class GammaVector {
 public:
  GammaVector() = default;
  explicit GammaVector(std::vector<double> gammas);
  GammaVector(std::initializer_list<double> gammas);

  int size() const { return static_cast<int>(gammas_.size()); }
  double operator[](int i) const { return gammas_[i]; }
  std::span<const double> values() const { return gammas_; }
  IndexSet FullSet() const { return IndexSet::Full(size()); }

  friend bool operator==(const GammaVector&, const GammaVector&) = default;

 private:
  std::vector<double> gammas_;
};

GammaVector GammasFromScenario(const Scenario& scenario);

struct GainStats {
  double mean = 0.0;
  double variance = 0.0;
};

// Wrapped normal density of a zero-mean phase with variance `gamma`,
// at y in [0, 2*pi). The image sum is truncated symmetrically so that the
// omitted mass stays below `tail_tol`.
double WrappedNormalPdf(double y, double gamma, double tail_tol = 1e-9);

// Number of images on each side of the principal branch used by
// WrappedNormalPdf.
int WrappedNormalTruncation(double gamma, double tail_tol);

// E[G(S)] = |S| + sum_{i != j} sqrt(v_i v_j),  v_i = exp(-gamma_i).
// Zero for the empty set.
double ExpectedGain(const GammaVector& gammas, IndexSet s);

// Var(G(S)) = sum_{i != j} (1 - v_i v_j)^2
//           + 2 sum_{i != j != k} (1 - v_i)^2 sqrt(v_j v_k).
// Zero when |S| <= 1.
double GainVariance(const GammaVector& gammas, IndexSet s);

GainStats ComputeGainStats(const GammaVector& gammas, IndexSet s);

// Expected gain of the full set, which is the largest over all subsets.
double MaxExpectedGain(const GammaVector& gammas);

struct SummationIdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

// Both sides of the quartic expansion
//   (sum_i sum_{j!=i} x_i x_j)^2 = 2 sum x_i^2 x_j^2 + 4 sum x_i^2 x_j x_k
//                                  + sum x_i x_j x_k x_l
// (all indices pairwise distinct), by naive nested loops. Test oracle only;
// 1 <= x.size() <= 8.
SummationIdentitySides EvaluateSummationIdentity(std::span<const double> x);
double SummationIdentityResidual(std::span<const double> x);

}  // namespace beamsel

#endif  // BEAMSEL_GAIN_MODEL_H_
