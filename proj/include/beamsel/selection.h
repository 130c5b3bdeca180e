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

#ifndef BEAMSEL_SELECTION_H_
#define BEAMSEL_SELECTION_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "beamsel/gain_model.h"
#include "beamsel/index_set.h"

namespace beamsel {

// The reduced problem: minimize Var(G(S)) subject to E[G(S)] >= threshold.
struct Instance {
  GammaVector gammas;
  double threshold = 0.0;

  int size() const { return gammas.size(); }
  friend bool operator==(const Instance&, const Instance&) = default;
};

// Stable identity of an instance, used to reject cross-instance comparisons.
uint64_t InstanceFingerprint(const Instance& instance);

enum class Algorithm { kGreedy, kDlg, kDs, kOracle };

std::string_view AlgorithmName(Algorithm algorithm);
// Accepts "greedy", "dlg", "ds", "oracle".
Algorithm ParseAlgorithm(std::string_view name);

// Which insertion order Double-Loop-Greedy kept.
enum class DlgBranch { kAscending, kDescending };

struct Diagnostics {
  int iterations = 0;
  std::optional<double> final_lambda;
  std::optional<DlgBranch> branch;
};

struct SelectionResult {
  IndexSet subset;
  GainStats stats;
  Algorithm algorithm = Algorithm::kGreedy;
  Diagnostics diagnostics;
  uint64_t instance_fingerprint = 0;
};

bool CheckFeasible(const Instance& instance);

// Agents sorted by ascending effective error; equal errors keep ascending
// index order.
std::vector<int> AscendingErrorOrder(const GammaVector& gammas);

// Adds agents by ascending effective error until the expected
// gain reaches the threshold.
SelectionResult Greedy(const Instance& instance);

// Builds one set by ascending and one by descending insertion,
// keep the ascending set only if its variance is strictly smaller.
SelectionResult DoubleLoopGreedy(const Instance& instance);

inline constexpr int kMaxOracleAgents = 20;

// Exact solution by enumerating all 2^N subsets (N <= 20). Ties on
// variance go to the smaller, then lexicographically smaller, subset.
SelectionResult BruteForceOracle(const Instance& instance);

// Variances at or below this are treated as zero by SuboptimalityRatio.
inline constexpr double kZeroVariance = 1e-15;

struct SuboptimalityRatio {
  double value = 1.0;
  bool unbounded = false;
};

SuboptimalityRatio ComputeSuboptimalityRatio(const SelectionResult& candidate,
                                             const SelectionResult& oracle);

// Throws kInfeasible when the instance has no feasible subset.
void RequireFeasible(const Instance& instance);

// Packs a subset and its statistics into a result.
SelectionResult MakeResult(const Instance& instance, IndexSet subset,
                           Algorithm algorithm);

}  // namespace beamsel

#endif  // BEAMSEL_SELECTION_H_
