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

// Generic machinery for minimizing a difference of submodular set functions
// f - g over a ground set {0, ..., n-1}: chain (permutation) modular lower
// bounds, an exact enumerating submodular minimizer, and the
// submodular-supermodular procedure built on them.

#ifndef BEAMSEL_SUBMODULAR_H_
#define BEAMSEL_SUBMODULAR_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "beamsel/index_set.h"

namespace beamsel {

// Pure, deterministic evaluation contract over subsets of the ground set.
using SetFunction = std::function<double(IndexSet)>;

// h(W) = offset + sum_{i in W} weights[i].
class ModularFunction {
 public:
  ModularFunction(double offset, std::vector<double> weights)
      : offset_(offset), weights_(std::move(weights)) {}

  double operator()(IndexSet w) const;
  double offset() const { return offset_; }
  const std::vector<double>& weights() const { return weights_; }
  int size() const { return static_cast<int>(weights_.size()); }

 private:
  double offset_;
  std::vector<double> weights_;
};

// Chain linearization of `g` along `permutation` (a permutation of
// {0..n-1}): the element at position k gets weight g(P_k) - g(P_{k-1}) for
// the prefixes P_0 = {} .. P_n, and the offset is g({}). The bound is tight
// on every prefix and lies below g everywhere when g is submodular.
// `anchor` must occupy the leading positions of the permutation.
ModularFunction ModularLowerBound(const SetFunction& g, IndexSet anchor,
                                  const std::vector<int>& permutation);

inline constexpr int kMaxExactMinimizerSize = 20;

// Exhaustive argmin over all 2^n subsets; ties go to the smaller, then
// lexicographically smaller, set. n <= 20.
IndexSet MinimizeSubmodularExact(const SetFunction& f, int n);

struct SspConfig {
  int max_iterations = 100;
  double improvement_tol = 1e-10;
  uint64_t permutation_seed = 0;
  // Restart 0 uses the deterministic order; each further restart shuffles
  // the order of the non-anchor elements with a stream derived from
  // permutation_seed.
  int restarts = 1;
};

void ValidateSspConfig(const SspConfig& config);

// One iteration of the procedure, reported to an observer.
struct SspStep {
  int restart = 0;
  int iteration = 0;
  IndexSet current;          // S_t
  const ModularFunction* lower_bound = nullptr;  // h_t, valid during the call
  IndexSet next;             // S_{t+1}
  double objective_before = 0.0;  // f(S_t) - g(S_t)
  double objective_after = 0.0;   // f(S_{t+1}) - g(S_{t+1})
};

using SspObserver = std::function<void(const SspStep&)>;

struct SspResult {
  IndexSet subset;
  double objective = 0.0;
  int iterations = 0;  // summed over restarts
};

struct SspOptions {
  IndexSet start;
  // Order used for elements outside S_t when building each permutation;
  // empty means ascending index.
  std::vector<int> tail_order;
  SspObserver observer;
};

// Local search for min f(S) - g(S), f and g submodular:
//   S_{t+1} = argmin_W f(W) - h_t(W),  h_t = ModularLowerBound(g, S_t, pi_t)
// where pi_t lists S_t (ascending) before the rest (in tail order). Stops
// when the objective improves by less than improvement_tol, or after
// max_iterations. The best result over restarts wins (lowest objective,
// then smaller set, then lexicographic).
SspResult SubmodularSupermodular(const SetFunction& f, const SetFunction& g,
                                 int n, const SspConfig& config,
                                 const SspOptions& options = {});

}  // namespace beamsel

#endif  // BEAMSEL_SUBMODULAR_H_
