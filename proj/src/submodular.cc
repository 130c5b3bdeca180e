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

#include "beamsel/submodular.h"

#include <numeric>
#include <string>
#include <utility>

#include "beamsel/error.h"
#include "beamsel/rng.h"

namespace beamsel {
namespace {

void CheckPermutation(const std::vector<int>& order, int n,
                      const char* what) {
  if (static_cast<int>(order.size()) != n) {
    throw Error(ErrorKind::kInput, std::string(what) + " has " +
                                       std::to_string(order.size()) +
                                       " entries, expected " +
                                       std::to_string(n));
  }
  IndexSet seen;
  for (int i : order) {
    if (i < 0 || i >= n || seen.Contains(i)) {
      throw Error(ErrorKind::kInput,
                  std::string(what) + " is not a permutation of [0, n)");
    }
    seen.Insert(i);
  }
}

std::vector<int> ChainFor(IndexSet anchor, const std::vector<int>& tail) {
  std::vector<int> chain = anchor.ToVector();
  for (int i : tail) {
    if (!anchor.Contains(i)) chain.push_back(i);
  }
  return chain;
}

bool BetterSsp(const SspResult& a, const SspResult& b) {
  if (a.objective != b.objective) return a.objective < b.objective;
  return CardinalityThenLexLess(a.subset, b.subset);
}

}  // namespace

double ModularFunction::operator()(IndexSet w) const {
  if (w.Extent() > size()) {
    throw Error(ErrorKind::kInput, "subset outside the modular function's "
                                   "ground set");
  }
  double value = offset_;
  w.ForEach([&](int i) { value += weights_[i]; });
  return value;
}

ModularFunction ModularLowerBound(const SetFunction& g, IndexSet anchor,
                                  const std::vector<int>& permutation) {
  const int n = static_cast<int>(permutation.size());
  CheckPermutation(permutation, n, "permutation");
  const int lead = anchor.size();
  for (int k = 0; k < n; ++k) {
    if (anchor.Contains(permutation[k]) != (k < lead)) {
      throw Error(ErrorKind::kInput,
                  "permutation must list the anchor set first");
    }
  }
  if (anchor.Extent() > n) {
    throw Error(ErrorKind::kInput, "anchor set outside the ground set");
  }

  std::vector<double> weights(n, 0.0);
  IndexSet prefix;
  const double offset = g(prefix);
  double previous = offset;
  for (int k = 0; k < n; ++k) {
    prefix.Insert(permutation[k]);
    const double value = g(prefix);
    weights[permutation[k]] = value - previous;
    previous = value;
  }
  return ModularFunction(offset, std::move(weights));
}

IndexSet MinimizeSubmodularExact(const SetFunction& f, int n) {
  if (n < 0) throw Error(ErrorKind::kInput, "negative ground set size");
  if (n > kMaxExactMinimizerSize) {
    throw Error(ErrorKind::kSize, "exact minimizer limited to " +
                                      std::to_string(kMaxExactMinimizerSize) +
                                      " elements, got " + std::to_string(n));
  }
  IndexSet best;
  double best_value = f(best);
  const uint64_t count = uint64_t{1} << n;
  for (uint64_t mask = 1; mask < count; ++mask) {
    const IndexSet s = IndexSet::FromMask(mask);
    const double value = f(s);
    if (value < best_value ||
        (value == best_value && CardinalityThenLexLess(s, best))) {
      best = s;
      best_value = value;
    }
  }
  return best;
}

void ValidateSspConfig(const SspConfig& config) {
  if (config.max_iterations < 1) {
    throw Error(ErrorKind::kInput, "SSP max_iterations must be >= 1");
  }
  if (!(config.improvement_tol > 0.0)) {
    throw Error(ErrorKind::kInput, "SSP improvement_tol must be > 0");
  }
  if (config.restarts < 1) {
    throw Error(ErrorKind::kInput, "SSP restarts must be >= 1");
  }
}

SspResult SubmodularSupermodular(const SetFunction& f, const SetFunction& g,
                                 int n, const SspConfig& config,
                                 const SspOptions& options) {
  ValidateSspConfig(config);
  if (n < 0 || n > kMaxExactMinimizerSize) {
    throw Error(ErrorKind::kSize, "SSP ground set size " + std::to_string(n) +
                                      " outside [0, " +
                                      std::to_string(kMaxExactMinimizerSize) +
                                      "]");
  }
  if (options.start.Extent() > n) {
    throw Error(ErrorKind::kInput, "SSP start set outside the ground set");
  }
  std::vector<int> base_tail = options.tail_order;
  if (base_tail.empty()) {
    base_tail.resize(n);
    std::iota(base_tail.begin(), base_tail.end(), 0);
  }
  CheckPermutation(base_tail, n, "tail order");

  const auto objective = [&](IndexSet s) { return f(s) - g(s); };

  SspResult best;
  int total_iterations = 0;
  for (int restart = 0; restart < config.restarts; ++restart) {
    std::vector<int> tail = base_tail;
    if (restart > 0) {
      SplitMixStream rng(HashKey(config.permutation_seed,
                                 {static_cast<uint64_t>(restart)}));
      for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.NextU64() % (uint64_t(i) + 1));
        std::swap(tail[i], tail[j]);
      }
    }

    IndexSet current = options.start;
    double value = objective(current);
    for (int t = 0; t < config.max_iterations; ++t) {
      const ModularFunction bound =
          ModularLowerBound(g, current, ChainFor(current, tail));
      const IndexSet next = MinimizeSubmodularExact(
          [&](IndexSet w) { return f(w) - bound(w); }, n);
      const double next_value = objective(next);
      ++total_iterations;
      if (options.observer) {
        SspStep step;
        step.restart = restart;
        step.iteration = t;
        step.current = current;
        step.lower_bound = &bound;
        step.next = next;
        step.objective_before = value;
        step.objective_after = next_value;
        options.observer(step);
      }
      // The surrogate is tight at S_t, so next_value <= value up to
      // rounding; a rounding-level increase ends the descent.
      if (next_value > value) break;
      const double improvement = value - next_value;
      current = next;
      value = next_value;
      if (improvement < config.improvement_tol) break;
    }

    SspResult candidate{current, value, 0};
    if (restart == 0 || BetterSsp(candidate, best)) best = candidate;
  }
  best.iterations = total_iterations;
  return best;
}

}  // namespace beamsel
