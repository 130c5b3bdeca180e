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

#ifndef BEAMSEL_SWEEP_H_
#define BEAMSEL_SWEEP_H_

#include <string>
#include <vector>

#include "beamsel/instance_io.h"

namespace beamsel {

// Grid presets. The reduced grids finish in minutes; `full` restores the
// 1000-instance grids over N = 4..10.
SweepSpec DefaultAverageSweep(bool full);
SweepSpec DefaultMaximumSweep(bool full);

// Runs every instance of every cell through the configured algorithms and the
// oracle. Records come back sorted by (n, gamma_max, beta, instance,
// algorithm) regardless of `threads`. Oracle rows carry SR = 1.
std::vector<SweepRecord> RunSweep(const SweepSpec& spec, int threads = 1);

struct CellSummary {
  int n = 0;
  double gamma_max = 0.0;
  double beta = 0.0;
  Algorithm algorithm = Algorithm::kGreedy;
  int instances = 0;
  double mean_sr = 0.0;  // over bounded ratios
  double max_sr = 0.0;   // +inf if any ratio is unbounded
  int unbounded = 0;
};

// Groups records by (n, gamma_max, beta, algorithm), in sorted order.
std::vector<CellSummary> SummarizeCells(const std::vector<SweepRecord>& records);

inline constexpr std::string_view kSummaryCsvHeader =
    "n,gamma_max,beta,algorithm,instances,mean_sr,max_sr,unbounded";
std::string FormatSummaryCsv(const std::vector<CellSummary>& cells);

// A cell whose aggregate SR misses a target; used for soft checks.
struct SoftViolation {
  CellSummary cell;
  double observed = 0.0;
  double limit = 0.0;
};

// Cells (for the listed algorithms) whose mean SR >= limit.
std::vector<SoftViolation> MeanSrViolations(
    const std::vector<CellSummary>& cells,
    const std::vector<Algorithm>& algorithms, double limit);
// Cells whose max SR >= limit.
std::vector<SoftViolation> MaxSrViolations(
    const std::vector<CellSummary>& cells,
    const std::vector<Algorithm>& algorithms, double limit);

}  // namespace beamsel

#endif  // BEAMSEL_SWEEP_H_
