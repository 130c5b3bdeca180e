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

#include "beamsel/instance_io.h"

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "beamsel/error.h"
#include "gtest/gtest.h"

namespace beamsel {
namespace {

namespace fs = std::filesystem;

struct Caught {
  ErrorKind kind = ErrorKind::kInput;
  std::string message;
  bool thrown = false;
};

Caught Catch(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return {e.kind(), e.what(), true};
  }
  return {};
}

fs::path TempPath(const std::string& name) {
  return fs::temp_directory_path() /
         ("beamsel_io_" + std::to_string(::getpid()) + "_" + name);
}

TEST(GenerateInstanceTest, ZeroRangeGivesZeroErrors) {
  const Instance inst = GenerateInstance(5, 0.0, 0.4, 9);
  for (double g : inst.gammas.values()) EXPECT_EQ(g, 0.0);
  EXPECT_DOUBLE_EQ(inst.threshold, 0.4 * 25);
}

TEST(GenerateInstanceTest, Deterministic) {
  const Instance a = GenerateInstance(8, 21.0, 0.6, 12345);
  const Instance b = GenerateInstance(8, 21.0, 0.6, 12345);
  const Instance c = GenerateInstance(8, 21.0, 0.6, 12346);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(GenerateInstanceTest, RangeAndFeasibility) {
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    const Instance inst = GenerateInstance(6, 30.0, 0.6, seed);
    ASSERT_EQ(inst.size(), 6);
    for (double g : inst.gammas.values()) {
      EXPECT_GE(g, 0.0);
      EXPECT_LE(g, 30.0);
    }
    EXPECT_TRUE(CheckFeasible(inst));
  }
  EXPECT_TRUE(CheckFeasible(GenerateInstance(10, 5.0, 1.0, 4)));
}

TEST(GenerateInstanceTest, RoughlyUniform) {
  double sum = 0.0;
  int count = 0;
  for (uint64_t seed = 0; seed < 2000; ++seed) {
    const Instance inst = GenerateInstance(10, 1.0, 0.5, seed);
    for (double g : inst.gammas.values()) {
      sum += g;
      ++count;
    }
  }
  EXPECT_NEAR(sum / count, 0.5, 4 * std::sqrt(1.0 / 12 / count));
}

TEST(GenerateInstanceTest, InputValidation) {
  EXPECT_EQ(Catch([] { GenerateInstance(0, 1, 0.5, 1); }).kind,
            ErrorKind::kInput);
  EXPECT_EQ(Catch([] { GenerateInstance(65, 1, 0.5, 1); }).kind,
            ErrorKind::kInput);
  EXPECT_EQ(Catch([] { GenerateInstance(3, -1, 0.5, 1); }).kind,
            ErrorKind::kInput);
  EXPECT_EQ(Catch([] { GenerateInstance(3, 1, 0.0, 1); }).kind,
            ErrorKind::kInput);
  EXPECT_EQ(Catch([] { GenerateInstance(3, 1, 1.5, 1); }).kind,
            ErrorKind::kInput);
}

TEST(InstanceSeedTest, DistinctAcrossCoordinates) {
  const uint64_t base = InstanceSeed(1, 5, 11.0, 0.6, 0);
  EXPECT_EQ(base, InstanceSeed(1, 5, 11.0, 0.6, 0));
  EXPECT_NE(base, InstanceSeed(2, 5, 11.0, 0.6, 0));
  EXPECT_NE(base, InstanceSeed(1, 6, 11.0, 0.6, 0));
  EXPECT_NE(base, InstanceSeed(1, 5, 21.0, 0.6, 0));
  EXPECT_NE(base, InstanceSeed(1, 5, 11.0, 0.7, 0));
  EXPECT_NE(base, InstanceSeed(1, 5, 11.0, 0.6, 1));
}

TEST(InstanceDocumentTest, RoundTripIsExact) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = GenerateInstance(1 + trial % 12, 40.0 * (trial % 3),
                                           0.7, rng());
    EXPECT_EQ(ParseInstance(FormatInstance(inst)), inst);
  }
  const Instance tricky{GammaVector{0.1, 1.0 / 3.0, 5e-324, 1e300},
                        2.0000000000000004};
  EXPECT_EQ(ParseInstance(FormatInstance(tricky)), tricky);
}

TEST(InstanceDocumentTest, FileRoundTrip) {
  const fs::path path = TempPath("instance.json");
  const Instance inst{GammaVector{0.4, 0.6, 3, 5}, 3.3};
  SaveInstance(path, inst);
  EXPECT_EQ(LoadInstance(path), inst);
  fs::remove(path);
  EXPECT_EQ(Catch([&] { LoadInstance(path); }).kind, ErrorKind::kParse);
}

TEST(InstanceDocumentTest, ParseErrorsCarryLocation) {
  const Caught syntax =
      Catch([] { ParseInstance("{\n  \"gammas\": [1, 2,\n  ]\n}"); });
  EXPECT_TRUE(syntax.thrown);
  EXPECT_EQ(syntax.kind, ErrorKind::kParse);
  EXPECT_NE(syntax.message.find("line 3"), std::string::npos)
      << syntax.message;

  const Caught missing = Catch([] { ParseInstance(R"({"gammas": [1]})"); });
  EXPECT_EQ(missing.kind, ErrorKind::kParse);
  EXPECT_NE(missing.message.find("'threshold'"), std::string::npos);

  const Caught wrong_type =
      Catch([] { ParseInstance(R"({"gammas": [1, "x"], "threshold": 1})"); });
  EXPECT_EQ(wrong_type.kind, ErrorKind::kParse);
  EXPECT_NE(wrong_type.message.find("gammas[1]"), std::string::npos);

  EXPECT_EQ(Catch([] { ParseInstance("[1, 2]"); }).kind, ErrorKind::kParse);
}

TEST(InstanceDocumentTest, InvariantViolations) {
  const Caught negative =
      Catch([] { ParseInstance(R"({"gammas": [0.5, -1], "threshold": 1})"); });
  EXPECT_EQ(negative.kind, ErrorKind::kValidation);
  EXPECT_NE(negative.message.find("gammas[1]"), std::string::npos);
  EXPECT_NE(negative.message.find(">= 0"), std::string::npos);

  EXPECT_EQ(
      Catch([] { ParseInstance(R"({"gammas": [], "threshold": 1})"); }).kind,
      ErrorKind::kValidation);
}

constexpr char kOneAgentScenario[] = R"({
  "client": [100, 0, 0],
  "wavelength": 1.0,
  "threshold_beta": 0.5,
  "agents": [
    {"mu": [0, 0, 0],
     "sigma": [[0.01, 0, 0], [0, 0.01, 0], [0, 0, 0.01]]}
  ]
})";

TEST(ScenarioDocumentTest, DerivesEffectiveErrors) {
  const ScenarioDocument doc = ParseScenario(kOneAgentScenario);
  EXPECT_EQ(doc.threshold_beta, 0.5);
  EXPECT_EQ(doc.scenario.agents[0].eta, 0.0);
  const Instance inst = InstanceFromScenario(doc);
  ASSERT_EQ(inst.size(), 1);
  EXPECT_NEAR(inst.gammas[0], 0.394784, 1e-6);
  EXPECT_NEAR(inst.gammas[0], 0.39478417604357435, 1e-9);
  EXPECT_DOUBLE_EQ(inst.threshold, 0.5);
}

TEST(ScenarioDocumentTest, ZeroCovarianceGivesZeroErrors) {
  ScenarioDocument doc;
  doc.scenario.client = Vec3(3, 4, 0);
  doc.scenario.wavelength = 0.125;
  doc.threshold_beta = 1.0;
  for (int i = 0; i < 4; ++i) {
    doc.scenario.agents.push_back(
        AgentGeometry{Vec3(0.1 * i, -0.2, 0.3), Cov3::Zero(), 0.5 * i});
  }
  const ScenarioDocument parsed = ParseScenario(FormatScenario(doc));
  const Instance inst = InstanceFromScenario(parsed);
  for (double g : inst.gammas.values()) EXPECT_EQ(g, 0.0);
  EXPECT_DOUBLE_EQ(inst.threshold, 16.0);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(parsed.scenario.agents[i].mu, doc.scenario.agents[i].mu);
    EXPECT_EQ(parsed.scenario.agents[i].eta, doc.scenario.agents[i].eta);
  }
}

TEST(ScenarioDocumentTest, Errors) {
  EXPECT_EQ(Catch([] {
              ParseScenario(R"({"client": [1, 0], "wavelength": 1,
                               "threshold_beta": 1, "agents": []})");
            }).kind,
            ErrorKind::kParse);
  const Caught beta = Catch([] {
    ParseScenario(R"({"client": [1, 0, 0], "wavelength": 1,
                     "threshold_beta": 1.5, "agents": []})");
  });
  EXPECT_EQ(beta.kind, ErrorKind::kValidation);
  EXPECT_NE(beta.message.find("threshold_beta"), std::string::npos);
  const Caught psd = Catch([] {
    ParseScenario(R"({"client": [1, 0, 0], "wavelength": 1,
                     "threshold_beta": 1,
                     "agents": [{"mu": [0, 0, 0],
                                 "sigma": [[1, 0, 0], [0, -1, 0], [0, 0, 1]]}]})");
  });
  EXPECT_EQ(psd.kind, ErrorKind::kValidation);
  const Caught sigma_shape = Catch([] {
    ParseScenario(R"({"client": [1, 0, 0], "wavelength": 1,
                     "threshold_beta": 1,
                     "agents": [{"mu": [0, 0, 0], "sigma": [[1, 0, 0]]}]})");
  });
  EXPECT_EQ(sigma_shape.kind, ErrorKind::kParse);
  EXPECT_NE(sigma_shape.message.find("agents[0].sigma"), std::string::npos);
}

TEST(SelectionResultJsonTest, Fields) {
  const Instance inst{GammaVector{0.4, 0.6, 3, 5}, 3.3};
  const nlohmann::json j = SelectionResultToJson(inst, DoubleLoopGreedy(inst));
  EXPECT_EQ(j["subset"], "2,3,4");
  EXPECT_EQ(j["algorithm"], "dlg");
  EXPECT_EQ(j["diagnostics"]["branch"], "s2");
  EXPECT_TRUE(j["diagnostics"]["final_lambda"].is_null());
  EXPECT_TRUE(j["feasible"].get<bool>());
  EXPECT_NEAR(j["variance"].get<double>(), 6.76295, 1e-4);
}

std::vector<SweepRecord> SampleRecords() {
  SweepRecord a;
  a.instance_id = 3;
  a.n = 4;
  a.gamma_max = 21.0;
  a.beta = 0.6;
  a.algorithm = Algorithm::kDlg;
  a.subset = IndexSet{1, 2, 3};
  a.expected_gain = 3.4888491794710776;
  a.variance = 6.762944792;
  a.sr = {1.0308029893, false};
  a.wall_time_ns = 1234;
  SweepRecord b = a;
  b.algorithm = Algorithm::kDs;
  b.subset = IndexSet();
  b.sr = {std::numeric_limits<double>::infinity(), true};
  return {a, b};
}

bool SameRecord(const SweepRecord& x, const SweepRecord& y) {
  return x.instance_id == y.instance_id && x.n == y.n &&
         x.gamma_max == y.gamma_max && x.beta == y.beta &&
         x.algorithm == y.algorithm && x.subset == y.subset &&
         x.expected_gain == y.expected_gain && x.variance == y.variance &&
         x.sr.unbounded == y.sr.unbounded &&
         (x.sr.unbounded || x.sr.value == y.sr.value) &&
         x.wall_time_ns == y.wall_time_ns;
}

TEST(RecordsCsvTest, FormatAndRoundTrip) {
  const std::vector<SweepRecord> records = SampleRecords();
  const std::string csv = FormatRecordsCsv(records);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kRecordCsvHeader);
  EXPECT_NE(csv.find(",dlg,\"2,3,4\","), std::string::npos);
  EXPECT_NE(csv.find(",inf,"), std::string::npos);
  const std::vector<SweepRecord> parsed = ParseRecordsCsv(csv);
  ASSERT_EQ(parsed.size(), records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    EXPECT_TRUE(SameRecord(parsed[i], records[i])) << i;
  }
}

TEST(RecordsCsvTest, Errors) {
  EXPECT_EQ(Catch([] { ParseRecordsCsv(""); }).kind, ErrorKind::kParse);
  EXPECT_EQ(Catch([] { ParseRecordsCsv("a,b\n"); }).kind, ErrorKind::kParse);
  const std::string header = std::string(kRecordCsvHeader) + "\n";
  EXPECT_TRUE(ParseRecordsCsv(header).empty());
  const Caught bad_number = Catch([&] {
    ParseRecordsCsv(header + "0,4,1,0.6,greedy,\"1\",x,0,1,5\n");
  });
  EXPECT_EQ(bad_number.kind, ErrorKind::kParse);
  EXPECT_NE(bad_number.message.find("line 2"), std::string::npos);
  EXPECT_NE(bad_number.message.find("expected_gain"), std::string::npos);
  EXPECT_EQ(Catch([&] { ParseRecordsCsv(header + "0,4,1\n"); }).kind,
            ErrorKind::kParse);
  EXPECT_EQ(Catch([&] {
              ParseRecordsCsv(header + "0,4,1,0.6,best,\"1\",1,0,1,5\n");
            }).kind,
            ErrorKind::kParse);
}

TEST(RecordsFileTest, JsonAndCsvOutputs) {
  const std::vector<SweepRecord> records = SampleRecords();
  const fs::path csv = TempPath("records.csv");
  const fs::path js = TempPath("records.json");
  SaveResults(csv, records);
  SaveResults(js, records);
  EXPECT_EQ(LoadResultsCsv(csv).size(), 2u);
  const nlohmann::json parsed = nlohmann::json::parse(ReadFile(js));
  ASSERT_EQ(parsed.size(), 2u);
  EXPECT_EQ(parsed[0]["subset"], "2,3,4");
  EXPECT_EQ(parsed[1]["sr"], "unbounded");
  fs::remove(csv);
  fs::remove(js);
}

TEST(SweepSpecTest, Validation) {
  SweepSpec spec;
  spec.n_values = {4, 5};
  spec.gamma_max_values = {0.0, 1.0};
  spec.beta_values = {0.6};
  EXPECT_NO_THROW(ValidateSweepSpec(spec));
  SweepSpec big = spec;
  big.n_values = {4, 21};
  EXPECT_EQ(Catch([&] { ValidateSweepSpec(big); }).kind, ErrorKind::kSize);
  SweepSpec bad_beta = spec;
  bad_beta.beta_values = {0.0};
  EXPECT_EQ(Catch([&] { ValidateSweepSpec(bad_beta); }).kind,
            ErrorKind::kInput);
  SweepSpec empty = spec;
  empty.gamma_max_values.clear();
  EXPECT_EQ(Catch([&] { ValidateSweepSpec(empty); }).kind, ErrorKind::kInput);
  SweepSpec none = spec;
  none.instances_per_cell = 0;
  EXPECT_EQ(Catch([&] { ValidateSweepSpec(none); }).kind, ErrorKind::kInput);
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(0.6), "0.6");
  EXPECT_EQ(FormatDouble(21.0), "21");
  EXPECT_EQ(FormatDouble(std::numeric_limits<double>::infinity()), "inf");
  const double x = 1.0 / 3.0;
  EXPECT_EQ(std::stod(FormatDouble(x)), x);
}

}  // namespace
}  // namespace beamsel
