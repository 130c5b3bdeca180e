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
#include <numeric>
#include <random>
#include <vector>

#include "beamsel/error.h"
#include "gtest/gtest.h"
#include "test_oracles.h"

namespace beamsel {
namespace {

using ::beamsel::testing::NaiveExpectedGain;
using ::beamsel::testing::NaiveMinVariance;
using ::beamsel::testing::RandomGammas;
using ::beamsel::testing::RelClose;

Instance FourAgents(double threshold) {
  return Instance{GammaVector{0.4, 0.6, 3, 5}, threshold};
}

Instance FiveAgents(double threshold) {
  return Instance{GammaVector{1, 2, 11, 12, 13}, threshold};
}

ErrorKind KindOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::kValidation;
}

TEST(AlgorithmNameTest, RoundTrips) {
  for (Algorithm a : {Algorithm::kGreedy, Algorithm::kDlg, Algorithm::kDs,
                      Algorithm::kOracle}) {
    EXPECT_EQ(ParseAlgorithm(AlgorithmName(a)), a);
  }
  EXPECT_EQ(KindOf([] { ParseAlgorithm("best"); }), ErrorKind::kInput);
}

TEST(CheckFeasibleTest, Examples) {
  EXPECT_TRUE(CheckFeasible(Instance{GammaVector{7, 8}, 0.0}));
  EXPECT_TRUE(CheckFeasible(Instance{GammaVector{0, 0, 0}, 9.0}));
  EXPECT_FALSE(CheckFeasible(Instance{GammaVector{0, 0, 0}, 9.0 + 1e-6}));
  EXPECT_TRUE(CheckFeasible(FourAgents(3.3)));
}

TEST(AscendingErrorOrderTest, StableOnTies) {
  EXPECT_EQ(AscendingErrorOrder(GammaVector{0.5, 0.1, 0.5, 0.1}),
            (std::vector<int>{1, 3, 0, 2}));
}

TEST(GreedyTest, FourAgentExample) {
  const SelectionResult r = Greedy(FourAgents(3.3));
  EXPECT_EQ(r.subset, (IndexSet{0, 1, 2}));
  EXPECT_EQ(r.algorithm, Algorithm::kGreedy);
  EXPECT_NEAR(r.stats.variance, 6.97127, 1e-4);
  EXPECT_GE(r.stats.mean, 3.3);
}

TEST(GreedyTest, UnitThresholdPicksLowestError) {
  const SelectionResult r = Greedy(Instance{GammaVector{3, 0.2, 9, 0.7}, 1.0});
  EXPECT_EQ(r.subset, IndexSet{1});
  EXPECT_EQ(r.stats.mean, 1.0);
}

TEST(GreedyTest, FiveAgentExample) {
  const SelectionResult r = Greedy(FiveAgents(2.4));
  EXPECT_EQ(r.subset, (IndexSet{0, 1}));
  EXPECT_NEAR(r.stats.mean, 2 + 2 * std::exp(-1.5), 1e-12);
  EXPECT_NEAR(r.stats.mean, 2.44626, 1e-5);
}

TEST(GreedyTest, NonPositiveThresholdGivesEmptySet) {
  for (double t : {0.0, -4.0}) {
    const SelectionResult r = Greedy(FourAgents(t));
    EXPECT_TRUE(r.subset.empty());
    EXPECT_EQ(r.stats.variance, 0.0);
  }
}

TEST(DoubleLoopGreedyTest, FourAgentExampleKeepsDescendingSet) {
  const SelectionResult r = DoubleLoopGreedy(FourAgents(3.3));
  EXPECT_EQ(r.subset, (IndexSet{1, 2, 3}));
  EXPECT_NEAR(r.stats.variance, 6.76295, 1e-4);
  EXPECT_EQ(r.diagnostics.branch, DlgBranch::kDescending);
}

TEST(DoubleLoopGreedyTest, VarianceTieReturnsDescendingSet) {
  const SelectionResult r = DoubleLoopGreedy(FourAgents(1.0));
  EXPECT_EQ(r.subset, IndexSet{3});
  EXPECT_EQ(r.stats.variance, 0.0);
  EXPECT_EQ(r.diagnostics.branch, DlgBranch::kDescending);
}

TEST(DoubleLoopGreedyTest, KeepsAscendingSetWhenStrictlyBetter) {
  // Descending insertion must take all five agents to reach the threshold
  // here, which is far noisier than the two low-error agents.
  const SelectionResult r = DoubleLoopGreedy(FiveAgents(2.4));
  EXPECT_EQ(r.subset, (IndexSet{0, 1}));
  EXPECT_EQ(r.diagnostics.branch, DlgBranch::kAscending);
}

TEST(OracleTest, FourAgentExample) {
  const SelectionResult r = BruteForceOracle(FourAgents(3.3));
  EXPECT_EQ(r.subset, (IndexSet{1, 2, 3}));
  EXPECT_NEAR(r.stats.variance, 6.7629447920, 1e-9);
}

TEST(OracleTest, FiveAgentThresholdFlip) {
  const SelectionResult low = BruteForceOracle(FiveAgents(2.4));
  EXPECT_EQ(low.subset, (IndexSet{0, 1}));
  EXPECT_NEAR(low.stats.variance, 1.80581, 1e-4);
  const SelectionResult high = BruteForceOracle(FiveAgents(2.5));
  EXPECT_EQ(high.subset, (IndexSet{2, 3, 4}));
  EXPECT_NEAR(high.stats.mean, 3.00004, 1e-4);
  EXPECT_NEAR(high.stats.variance, 6.00008, 1e-4);
}

TEST(OracleTest, ZeroThresholdGivesEmptySet) {
  const SelectionResult r = BruteForceOracle(FourAgents(0.0));
  EXPECT_TRUE(r.subset.empty());
  EXPECT_EQ(r.stats.variance, 0.0);
}

TEST(OracleTest, VarianceTiesPreferSmallerThenLexicographic) {
  // Every singleton and the empty set has zero variance; with threshold 1
  // the empty set is infeasible, so the first singleton wins.
  const SelectionResult r = BruteForceOracle(FourAgents(1.0));
  EXPECT_EQ(r.subset, IndexSet{0});
  // Identical zero errors: every pair has zero variance and E = 4.
  const SelectionResult pair =
      BruteForceOracle(Instance{GammaVector{0, 0, 0, 0}, 3.5});
  EXPECT_EQ(pair.subset, (IndexSet{0, 1}));
}

TEST(SelectionErrorsTest, InfeasibleAndOversized) {
  const Instance infeasible{GammaVector{0, 0, 0}, 9.5};
  EXPECT_EQ(KindOf([&] { Greedy(infeasible); }), ErrorKind::kInfeasible);
  EXPECT_EQ(KindOf([&] { DoubleLoopGreedy(infeasible); }),
            ErrorKind::kInfeasible);
  EXPECT_EQ(KindOf([&] { BruteForceOracle(infeasible); }),
            ErrorKind::kInfeasible);
  const Instance big{GammaVector(std::vector<double>(21, 0.1)), 2.0};
  EXPECT_EQ(KindOf([&] { BruteForceOracle(big); }), ErrorKind::kSize);
  EXPECT_EQ(Greedy(big).subset.size(), 2);
  const Instance nan_threshold{GammaVector{0.1}, std::nan("")};
  EXPECT_EQ(KindOf([&] { Greedy(nan_threshold); }), ErrorKind::kInput);
}

TEST(SuboptimalityRatioTest, Conventions) {
  const Instance inst = FourAgents(3.3);
  const SelectionResult greedy = Greedy(inst);
  const SelectionResult oracle = BruteForceOracle(inst);
  const SuboptimalityRatio sr = ComputeSuboptimalityRatio(greedy, oracle);
  EXPECT_FALSE(sr.unbounded);
  EXPECT_NEAR(sr.value, 1.03080, 1e-4);
  EXPECT_NEAR(sr.value, 1.0308029893, 1e-9);
  EXPECT_EQ(ComputeSuboptimalityRatio(oracle, oracle).value, 1.0);

  const Instance unit = FourAgents(1.0);
  const SuboptimalityRatio zero_zero = ComputeSuboptimalityRatio(
      DoubleLoopGreedy(unit), BruteForceOracle(unit));
  EXPECT_EQ(zero_zero.value, 1.0);
  EXPECT_FALSE(zero_zero.unbounded);

  const SelectionResult noisy = MakeResult(unit, IndexSet{0, 3}, Algorithm::kDs);
  const SuboptimalityRatio unbounded =
      ComputeSuboptimalityRatio(noisy, BruteForceOracle(unit));
  EXPECT_TRUE(unbounded.unbounded);
  EXPECT_TRUE(std::isinf(unbounded.value));
}

TEST(SuboptimalityRatioTest, RejectsMismatchedInstances) {
  const SelectionResult a = Greedy(FourAgents(3.3));
  const SelectionResult b = BruteForceOracle(FourAgents(3.2));
  EXPECT_EQ(KindOf([&] { ComputeSuboptimalityRatio(a, b); }),
            ErrorKind::kInput);
}

TEST(FingerprintTest, DistinguishesInstances) {
  EXPECT_EQ(InstanceFingerprint(FourAgents(3.3)),
            InstanceFingerprint(FourAgents(3.3)));
  EXPECT_NE(InstanceFingerprint(FourAgents(3.3)),
            InstanceFingerprint(FourAgents(3.4)));
  EXPECT_NE(InstanceFingerprint(Instance{GammaVector{0.1, 0.2}, 1}),
            InstanceFingerprint(Instance{GammaVector{0.2, 0.1}, 1}));
}

// ---- Properties over random instances -----------------------------------

class SelectionPropertyTest : public ::testing::Test {
 protected:
  std::mt19937_64 rng_{424242};

  Instance Draw(int n, double gmax) {
    std::vector<double> g = RandomGammas(rng_, n, gmax);
    const double top = MaxExpectedGain(GammaVector(g));
    std::uniform_real_distribution<double> beta(0.0, 1.0);
    return Instance{GammaVector(std::move(g)), beta(rng_) * top};
  }
};

TEST_F(SelectionPropertyTest, OutputsFeasibleAndDlgDominatesGreedy) {
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng_() % 10);
    const Instance inst = Draw(n, trial % 2 ? 30.0 : 2.0);
    const SelectionResult greedy = Greedy(inst);
    const SelectionResult dlg = DoubleLoopGreedy(inst);
    const SelectionResult oracle = BruteForceOracle(inst);
    for (const SelectionResult* r : {&greedy, &dlg, &oracle}) {
      EXPECT_GE(r->stats.mean, inst.threshold);
      EXPECT_GE(ComputeSuboptimalityRatio(*r, oracle).value, 1.0);
    }
    EXPECT_LE(dlg.stats.variance, greedy.stats.variance + 1e-12);
  }
}

TEST_F(SelectionPropertyTest, OracleMatchesIndependentEnumeration) {
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng_() % 9);
    const Instance inst = Draw(n, 10.0);
    const std::vector<double> g(inst.gammas.values().begin(),
                                inst.gammas.values().end());
    const testing::NaiveOptimum naive = NaiveMinVariance(g, inst.threshold);
    const SelectionResult oracle = BruteForceOracle(inst);
    EXPECT_TRUE(RelClose(oracle.stats.variance, naive.variance, 1e-10));
    EXPECT_GE(NaiveExpectedGain(g, oracle.subset.mask()),
              inst.threshold - 1e-12);
  }
}

TEST_F(SelectionPropertyTest, GreedyOptimalWhenTwoBestAgentsSuffice) {
  int checked = 0;
  while (checked < 300) {
    const int n = 2 + static_cast<int>(rng_() % 9);
    Instance inst = Draw(n, 20.0);
    const std::vector<int> order = AscendingErrorOrder(inst.gammas);
    const double pair =
        ExpectedGain(inst.gammas, IndexSet{order[0], order[1]});
    if (pair < inst.threshold) continue;
    ++checked;
    EXPECT_TRUE(RelClose(Greedy(inst).stats.variance,
                         BruteForceOracle(inst).stats.variance, 1e-10));
  }
}

TEST_F(SelectionPropertyTest, GreedyOptimalForSmallErrors) {
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng_() % 10);
    const Instance inst = Draw(n, 0.83);
    const double greedy = Greedy(inst).stats.variance;
    const double oracle = BruteForceOracle(inst).stats.variance;
    EXPECT_TRUE(RelClose(greedy, oracle, 1e-10)) << greedy << " " << oracle;
    EXPECT_TRUE(RelClose(DoubleLoopGreedy(inst).stats.variance, oracle, 1e-10));
  }
}

TEST_F(SelectionPropertyTest, LowestErrorsMaximizeMeanPerCardinality) {
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng_() % 8);
    const std::vector<double> g = RandomGammas(rng_, n, 5.0);
    const GammaVector gv(g);
    for (int k = 1; k <= n; ++k) {
      uint64_t min_sum_mask = 0;
      uint64_t max_mean_mask = 0;
      double min_sum = INFINITY;
      double max_mean = -INFINITY;
      int max_mean_count = 0;
      for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
        const IndexSet s = IndexSet::FromMask(mask);
        if (s.size() != k) continue;
        double sum = 0.0;
        s.ForEach([&](int i) { sum += g[i]; });
        if (sum < min_sum) {
          min_sum = sum;
          min_sum_mask = mask;
        }
        const double mean = ExpectedGain(gv, s);
        if (mean > max_mean) {
          max_mean = mean;
          max_mean_mask = mask;
          max_mean_count = 1;
        } else if (mean == max_mean) {
          ++max_mean_count;
        }
      }
      // Every singleton has mean exactly 1, so the mean only separates
      // subsets of two or more agents.
      EXPECT_EQ(ExpectedGain(gv, IndexSet::FromMask(min_sum_mask)), max_mean);
      if (k >= 2) {
        EXPECT_EQ(min_sum_mask, max_mean_mask) << "n=" << n << " k=" << k;
        EXPECT_EQ(max_mean_count, 1);
      }
    }
  }
}

}  // namespace
}  // namespace beamsel
