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

#include "beamsel/montecarlo.h"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "beamsel/error.h"

namespace beamsel {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int64_t kChunk = 1 << 14;

}  // namespace

void MomentAccumulator::Push(double x) {
  const double n1 = static_cast<double>(count_);
  ++count_;
  const double n = static_cast<double>(count_);
  const double delta = x - mean_;
  const double delta_n = delta / n;
  const double delta_n2 = delta_n * delta_n;
  const double term1 = delta * delta_n * n1;
  mean_ += delta_n;
  m4_ += term1 * delta_n2 * (n * n - 3 * n + 3) + 6 * delta_n2 * m2_ -
         4 * delta_n * m3_;
  m3_ += term1 * delta_n * (n - 2) - 3 * delta_n * m2_;
  m2_ += term1;
}

void MomentAccumulator::Merge(const MomentAccumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  const double d2 = delta * delta;
  const double d3 = d2 * delta;
  const double d4 = d2 * d2;

  const double m2 = m2_ + other.m2_ + d2 * na * nb / n;
  const double m3 = m3_ + other.m3_ + d3 * na * nb * (na - nb) / (n * n) +
                    3.0 * delta * (na * other.m2_ - nb * m2_) / n;
  const double m4 = m4_ + other.m4_ +
                    d4 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                    6.0 * d2 * (na * na * other.m2_ + nb * nb * m2_) / (n * n) +
                    4.0 * delta * (na * other.m3_ - nb * m3_) / n;
  mean_ = (na * mean_ + nb * other.mean_) / n;
  m2_ = m2;
  m3_ = m3;
  m4_ = m4;
  count_ += other.count_;
}

double MomentAccumulator::SampleVariance() const {
  if (count_ < 2) return 0.0;
  return std::max(0.0, m2_ / static_cast<double>(count_ - 1));
}

McReport MomentAccumulator::Report() const {
  McReport report;
  report.samples = count_;
  report.sample_mean = mean_;
  report.sample_variance = SampleVariance();
  if (count_ >= 2) {
    const double n = static_cast<double>(count_);
    const double s2 = report.sample_variance;
    report.mean_stderr = std::sqrt(s2 / n);
    // Large-sample standard error of the unbiased variance estimator.
    const double central4 = m4_ / n;
    const double v = central4 - s2 * s2 * (n - 3.0) / (n - 1.0);
    report.variance_stderr = std::sqrt(std::max(0.0, v) / n);
  }
  return report;
}

double SampleTotalPhase(double gamma, SplitMixStream& stream) {
  if (!(gamma >= 0.0)) {
    throw Error(ErrorKind::kInput, "gamma must be nonnegative");
  }
  const double z = stream.NextNormal();
  return gamma == 0.0 ? 0.0 : std::sqrt(gamma) * z;
}

double WrapPhase(double phase) {
  double wrapped = phase - kTwoPi * std::floor(phase / kTwoPi);
  if (wrapped >= kTwoPi || wrapped < 0.0) wrapped = 0.0;
  return wrapped;
}

double GainFromPhases(std::span<const double> phases) {
  double c = 0.0;
  double s = 0.0;
  for (double phase : phases) {
    const double w = WrapPhase(phase);
    c += std::cos(w);
    s += std::sin(w);
  }
  return c * c + s * s;
}

uint64_t PhaseStreamKey(uint64_t seed, int64_t sample, int agent) {
  return HashKey(seed, {static_cast<uint64_t>(sample),
                        static_cast<uint64_t>(agent)});
}

McReport SimulateGain(const GammaVector& gammas, IndexSet s, int64_t samples,
                      uint64_t seed) {
  if (samples < 100) {
    throw Error(ErrorKind::kInput, "at least 100 samples are required");
  }
  if (s.empty()) {
    throw Error(ErrorKind::kInput, "simulation needs a nonempty subset");
  }
  if (s.Extent() > gammas.size()) {
    throw Error(ErrorKind::kInput, "subset exceeds the number of agents");
  }
  const std::vector<int> agents = s.ToVector();
  std::vector<double> phases(agents.size());

  // Fixed-size chunks merged in order: the reduction tree does not depend
  // on how chunks might be scheduled.
  MomentAccumulator total;
  for (int64_t begin = 0; begin < samples; begin += kChunk) {
    const int64_t end = std::min(samples, begin + kChunk);
    MomentAccumulator chunk;
    for (int64_t m = begin; m < end; ++m) {
      for (size_t a = 0; a < agents.size(); ++a) {
        SplitMixStream stream(PhaseStreamKey(seed, m, agents[a]));
        phases[a] = SampleTotalPhase(gammas[agents[a]], stream);
      }
      chunk.Push(GainFromPhases(phases));
    }
    total.Merge(chunk);
  }
  return total.Report();
}

ClosedFormCheck CompareToClosedForm(const McReport& report,
                                    const GainStats& expected, double z) {
  ClosedFormCheck check;
  check.expected = expected;
  check.report = report;
  // A rounding-level slack lets exact (zero-stderr) cases pass.
  const auto within = [z](double sample, double closed, double stderr_) {
    return std::abs(sample - closed) <=
           z * stderr_ + 1e-12 * (1.0 + std::abs(closed));
  };
  check.mean_ok =
      within(report.sample_mean, expected.mean, report.mean_stderr);
  check.variance_ok = within(report.sample_variance, expected.variance,
                             report.variance_stderr);
  check.passed = check.mean_ok && check.variance_ok;
  return check;
}

ClosedFormCheck ValidateClosedForms(const GammaVector& gammas, IndexSet s,
                                    int64_t samples, uint64_t seed, double z) {
  return CompareToClosedForm(SimulateGain(gammas, s, samples, seed),
                             ComputeGainStats(gammas, s), z);
}

}  // namespace beamsel
