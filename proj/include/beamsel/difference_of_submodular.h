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

#ifndef BEAMSEL_DIFFERENCE_OF_SUBMODULAR_H_
#define BEAMSEL_DIFFERENCE_OF_SUBMODULAR_H_

#include "beamsel/selection.h"
#include "beamsel/submodular.h"

namespace beamsel {

struct DsConfig {
  double lambda0 = 1.0;
  double alpha = 2.0;
  int max_outer = 64;
  // Start each SSP call from the previous outer iterate; when false every
  // call starts from the empty set.
  bool warm_start = true;
  SspConfig ssp;
};

void ValidateDsConfig(const DsConfig& config);

struct DsOptions {
  // Called with the outer iteration index and lambda before each SSP call.
  std::function<void(int, double)> on_outer;
  SspObserver ssp_observer;
};

// Starting from S = {}, while E[G(S)] < threshold, replaces S
// with the SSP local minimum of Var(G(.)) - lambda_k E[G(.)] (as the
// difference f - g of f = -lambda_k E, g = -Var) and multiplies lambda by
// alpha. Diagnostics carry the outer iteration count and the lambda of the
// final SSP call.
SelectionResult DifferenceOfSubmodular(const Instance& instance,
                                       const DsConfig& config = {},
                                       const DsOptions& options = {});

}  // namespace beamsel

#endif  // BEAMSEL_DIFFERENCE_OF_SUBMODULAR_H_
