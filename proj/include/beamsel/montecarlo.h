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

// Sampling estimator of beamforming-gain statistics, used to check the
// closed-form mean and variance.

#ifndef BEAMSEL_MONTECARLO_H_
#define BEAMSEL_MONTECARLO_H_

#include <cstdint>
#include <span>

#include "beamsel/gain_model.h"
#include "beamsel/rng.h"

namespace beamsel {

struct McReport {
  double sample_mean = 0.0;
  double sample_variance = 0.0;  // Bessel-corrected
  int64_t samples = 0;
  double mean_stderr = 0.0;
  double variance_stderr = 0.0;
};

// Running central moments up to order four; mergeable (Pebay's pairwise
// update) so partial results over disjoint sample ranges combine exactly
// as a single pass would, up to rounding.
class MomentAccumulator {
 public:
  void Push(double x);
  void Merge(const MomentAccumulator& other);

  int64_t count() const { return count_; }
  double mean() const { return mean_; }
  double SampleVariance() const;
  McReport Report() const;

 private:
  int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double m3_ = 0.0;
  double m4_ = 0.0;
};

// Total phase of an agent with effective error `gamma` under the
// mean-aligning phase adjustment: a draw from N(0, gamma). Unwrapped; the
// gain only sees it through 2*pi-periodic functions.
double SampleTotalPhase(double gamma, SplitMixStream& stream);

// Reduces a phase into [0, 2*pi).
double WrapPhase(double phase);

// G = (sum cos phi)^2 + (sum sin phi)^2. Phases are wrapped first, so
// wrapped and unwrapped inputs give bit-identical gains.
double GainFromPhases(std::span<const double> phases);

// Substream key for one agent in one sample.
uint64_t PhaseStreamKey(uint64_t seed, int64_t sample, int agent);

// samples >= 100, |S| >= 1.
McReport SimulateGain(const GammaVector& gammas, IndexSet s, int64_t samples,
                      uint64_t seed);

inline constexpr double kDefaultZScore = 4.0;

struct ClosedFormCheck {
  bool passed = false;
  bool mean_ok = false;
  bool variance_ok = false;
  GainStats expected;
  McReport report;
};

// |sample stat - expected| <= z * stderr for both mean and variance.
ClosedFormCheck CompareToClosedForm(const McReport& report,
                                    const GainStats& expected, double z);

ClosedFormCheck ValidateClosedForms(const GammaVector& gammas, IndexSet s,
                                    int64_t samples, uint64_t seed,
                                    double z = kDefaultZScore);

}  // namespace beamsel

#endif  // BEAMSEL_MONTECARLO_H_
