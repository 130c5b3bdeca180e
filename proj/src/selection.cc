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

#include "beamsel/selection.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "beamsel/error.h"
#include "beamsel/rng.h"

namespace beamsel {
namespace {

std::string FormatThreshold(const Instance& instance) {
  return "threshold " + std::to_string(instance.threshold) +
         " exceeds maximum expected gain " +
         std::to_string(MaxExpectedGain(instance.gammas));
}

// Inserts agents in `order` until the expected gain reaches the threshold.
IndexSet InsertUntilFeasible(const Instance& instance,
                             const std::vector<int>& order, int* steps) {
  IndexSet s;
  size_t next = 0;
  while (ExpectedGain(instance.gammas, s) < instance.threshold) {
    if (next == order.size()) {
      throw Error(ErrorKind::kInfeasible, FormatThreshold(instance));
    }
    s.Insert(order[next++]);
  }
  *steps += static_cast<int>(next);
  return s;
}

}  // namespace

uint64_t InstanceFingerprint(const Instance& instance) {
  uint64_t h = HashKey(0x6265616d73656cULL,
                       {static_cast<uint64_t>(instance.size()),
                        DoubleBits(instance.threshold)});
  for (double g : instance.gammas.values()) h = HashCombine(h, DoubleBits(g));
  return h;
}

std::string_view AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kGreedy:
      return "greedy";
    case Algorithm::kDlg:
      return "dlg";
    case Algorithm::kDs:
      return "ds";
    case Algorithm::kOracle:
      return "oracle";
  }
  return "unknown";
}

Algorithm ParseAlgorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kGreedy, Algorithm::kDlg, Algorithm::kDs,
                      Algorithm::kOracle}) {
    if (AlgorithmName(a) == name) return a;
  }
  throw Error(ErrorKind::kInput,
              "unknown algorithm '" + std::string(name) + "'");
}

bool CheckFeasible(const Instance& instance) {
  return MaxExpectedGain(instance.gammas) >= instance.threshold;
}

void RequireFeasible(const Instance& instance) {
  if (!std::isfinite(instance.threshold)) {
    throw Error(ErrorKind::kInput, "threshold must be finite");
  }
  if (!CheckFeasible(instance)) {
    throw Error(ErrorKind::kInfeasible, FormatThreshold(instance));
  }
}

std::vector<int> AscendingErrorOrder(const GammaVector& gammas) {
  std::vector<int> order(gammas.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return gammas[a] < gammas[b]; });
  return order;
}

SelectionResult MakeResult(const Instance& instance, IndexSet subset,
                           Algorithm algorithm) {
  SelectionResult result;
  result.subset = subset;
  result.stats = ComputeGainStats(instance.gammas, subset);
  result.algorithm = algorithm;
  result.instance_fingerprint = InstanceFingerprint(instance);
  return result;
}

SelectionResult Greedy(const Instance& instance) {
  RequireFeasible(instance);
  int steps = 0;
  const IndexSet s =
      InsertUntilFeasible(instance, AscendingErrorOrder(instance.gammas), &steps);
  SelectionResult result = MakeResult(instance, s, Algorithm::kGreedy);
  result.diagnostics.iterations = steps;
  return result;
}

SelectionResult DoubleLoopGreedy(const Instance& instance) {
  RequireFeasible(instance);
  std::vector<int> order = AscendingErrorOrder(instance.gammas);
  int steps = 0;
  const IndexSet ascending = InsertUntilFeasible(instance, order, &steps);
  std::reverse(order.begin(), order.end());
  const IndexSet descending = InsertUntilFeasible(instance, order, &steps);

  const bool keep_ascending = GainVariance(instance.gammas, ascending) <
                              GainVariance(instance.gammas, descending);
  SelectionResult result = MakeResult(
      instance, keep_ascending ? ascending : descending, Algorithm::kDlg);
  result.diagnostics.iterations = steps;
  result.diagnostics.branch =
      keep_ascending ? DlgBranch::kAscending : DlgBranch::kDescending;
  return result;
}

SelectionResult BruteForceOracle(const Instance& instance) {
  const int n = instance.size();
  if (n > kMaxOracleAgents) {
    throw Error(ErrorKind::kSize, "oracle enumeration limited to " +
                                      std::to_string(kMaxOracleAgents) +
                                      " agents, got " + std::to_string(n));
  }
  RequireFeasible(instance);

  IndexSet best;
  double best_variance = 0.0;
  bool found = false;
  const uint64_t count = uint64_t{1} << n;
  for (uint64_t mask = 0; mask < count; ++mask) {
    const IndexSet s = IndexSet::FromMask(mask);
    if (ExpectedGain(instance.gammas, s) < instance.threshold) continue;
    const double variance = GainVariance(instance.gammas, s);
    if (!found || variance < best_variance ||
        (variance == best_variance && CardinalityThenLexLess(s, best))) {
      best = s;
      best_variance = variance;
      found = true;
    }
  }
  SelectionResult result = MakeResult(instance, best, Algorithm::kOracle);
  result.diagnostics.iterations = static_cast<int>(count);
  return result;
}

SuboptimalityRatio ComputeSuboptimalityRatio(const SelectionResult& candidate,
                                             const SelectionResult& oracle) {
  if (candidate.instance_fingerprint != oracle.instance_fingerprint) {
    throw Error(ErrorKind::kInput,
                "suboptimality ratio of results from different instances");
  }
  const double num = candidate.stats.variance;
  const double den = oracle.stats.variance;
  if (den > kZeroVariance) return {num / den, false};
  if (num <= kZeroVariance) return {1.0, false};
  return {std::numeric_limits<double>::infinity(), true};
}

}  // namespace beamsel
