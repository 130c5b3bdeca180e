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

#include "beamsel/difference_of_submodular.h"

#include <cmath>
#include <string>

#include "beamsel/error.h"

namespace beamsel {

void ValidateDsConfig(const DsConfig& config) {
  if (!(config.lambda0 > 0.0) || !std::isfinite(config.lambda0)) {
    throw Error(ErrorKind::kInput, "lambda0 must be positive and finite");
  }
  if (!(config.alpha > 1.0) || !std::isfinite(config.alpha)) {
    throw Error(ErrorKind::kInput, "alpha must be finite and > 1");
  }
  if (config.max_outer < 1) {
    throw Error(ErrorKind::kInput, "max_outer must be >= 1");
  }
  ValidateSspConfig(config.ssp);
}

SelectionResult DifferenceOfSubmodular(const Instance& instance,
                                       const DsConfig& config,
                                       const DsOptions& options) {
  ValidateDsConfig(config);
  RequireFeasible(instance);
  const GammaVector& gammas = instance.gammas;
  const int n = instance.size();

  SspOptions ssp_options;
  ssp_options.tail_order = AscendingErrorOrder(gammas);
  ssp_options.observer = options.ssp_observer;

  const SetFunction neg_variance = [&](IndexSet s) {
    return -GainVariance(gammas, s);
  };

  IndexSet s;
  double lambda = config.lambda0;
  Diagnostics diagnostics;
  int outer = 0;
  while (ExpectedGain(gammas, s) < instance.threshold) {
    if (outer == config.max_outer) {
      throw Error(ErrorKind::kNotConverged,
                  "DS did not reach the threshold within " +
                      std::to_string(config.max_outer) +
                      " outer iterations (last lambda " +
                      std::to_string(diagnostics.final_lambda.value_or(0.0)) +
                      ")");
    }
    if (options.on_outer) options.on_outer(outer, lambda);
    const SetFunction neg_scaled_mean = [&, lambda](IndexSet w) {
      return -lambda * ExpectedGain(gammas, w);
    };
    ssp_options.start = config.warm_start ? s : IndexSet();
    s = SubmodularSupermodular(neg_scaled_mean, neg_variance, n, config.ssp,
                               ssp_options)
            .subset;
    diagnostics.final_lambda = lambda;
    ++outer;
    lambda *= config.alpha;
  }
  diagnostics.iterations = outer;

  SelectionResult result = MakeResult(instance, s, Algorithm::kDs);
  result.diagnostics = diagnostics;
  return result;
}

}  // namespace beamsel
