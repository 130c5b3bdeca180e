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

#include "beamsel/example_report.h"

#include <cstdio>
#include <string>
#include <vector>

#include "beamsel/difference_of_submodular.h"
#include "beamsel/gain_model.h"
#include "beamsel/selection.h"

namespace beamsel {
namespace {

std::string Line(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

std::string Braced(IndexSet s) { return "{" + s.ToOneBasedString() + "}"; }

double TotalError(const GammaVector& gammas, IndexSet s) {
  double total = 0.0;
  s.ForEach([&](int i) { total += gammas[i]; });
  return total;
}

}  // namespace

void WriteExampleReport(std::ostream& out) {
  const Instance four{GammaVector{0.4, 0.6, 3.0, 5.0}, 3.3};
  const GammaVector& g = four.gammas;

  out << "Four agents, gammas = (0.4, 0.6, 3, 5), threshold = 3.3\n";
  out << Line("  E[G({1,2})] = %.4f  (below the threshold: three agents "
              "needed)\n",
              ExpectedGain(g, IndexSet{0, 1}));
  out << "  subset      E[G]       Var(G)     total error\n";
  const std::vector<IndexSet> triples = {IndexSet{0, 1, 2}, IndexSet{0, 1, 3},
                                         IndexSet{0, 2, 3}, IndexSet{1, 2, 3}};
  IndexSet min_var = triples.front();
  for (int k = 0; k < static_cast<int>(triples.size()); ++k) {
    const GainStats st = ComputeGainStats(g, triples[k]);
    out << Line("  S%d %-8s %-10.5f %-10.5f %.1f\n", k + 1,
                Braced(triples[k]).c_str(), st.mean, st.variance,
                TotalError(g, triples[k]));
    if (st.variance < GainVariance(g, min_var)) min_var = triples[k];
  }
  out << "  minimum-variance 3-subset: " << Braced(min_var) << "\n";

  const SelectionResult greedy = Greedy(four);
  const SelectionResult dlg = DoubleLoopGreedy(four);
  const SelectionResult ds = DifferenceOfSubmodular(four);
  const SelectionResult oracle = BruteForceOracle(four);
  for (const SelectionResult* r : {&greedy, &dlg, &ds, &oracle}) {
    out << Line("  %-7s -> %-10s E = %.5f  Var = %.5f\n",
                std::string(AlgorithmName(r->algorithm)).c_str(),
                Braced(r->subset).c_str(), r->stats.mean, r->stats.variance);
  }
  out << Line("  SR(greedy) = %.5f\n",
              ComputeSuboptimalityRatio(greedy, oracle).value);

  out << "\nFive agents, gammas = (1, 2, 11, 12, 13)\n";
  const GammaVector five{1.0, 2.0, 11.0, 12.0, 13.0};
  for (double threshold : {2.4, 2.5}) {
    const Instance inst{five, threshold};
    const SelectionResult r = BruteForceOracle(inst);
    out << Line("  threshold %.1f: oracle -> %-10s E = %.5f  Var = %.5f\n",
                threshold, Braced(r.subset).c_str(), r.stats.mean,
                r.stats.variance);
  }
}

}  // namespace beamsel
