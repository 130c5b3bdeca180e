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

#ifndef BEAMSEL_INSTANCE_IO_H_
#define BEAMSEL_INSTANCE_IO_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "beamsel/difference_of_submodular.h"
#include "beamsel/gain_model.h"
#include "beamsel/selection.h"
#include "json.hpp"

namespace beamsel {

// gamma_i ~ U[0, gamma_max] i.i.d. from a stream keyed by `seed`, and
// threshold = beta * MaxExpectedGain(gammas). n in [1, 64],
// gamma_max >= 0, 0 < beta <= 1.
Instance GenerateInstance(int n, double gamma_max, double beta, uint64_t seed);

// Seed of one instance in a sweep cell, independent of every other cell.
uint64_t InstanceSeed(uint64_t base_seed, int n, double gamma_max,
                      double beta, int instance_index);

// ---- Documents --------------------------------------------------------

// { "gammas": [..], "threshold": x }
Instance ParseInstance(std::string_view text);
std::string FormatInstance(const Instance& instance);
Instance LoadInstance(const std::filesystem::path& path);
void SaveInstance(const std::filesystem::path& path, const Instance& instance);

struct ScenarioDocument {
  Scenario scenario;
  double threshold_beta = 1.0;
};

// { "client": [x,y,z], "wavelength": w, "threshold_beta": b,
//   "agents": [ { "mu": [..], "sigma": [[..],[..],[..]], "eta": e }, .. ] }
ScenarioDocument ParseScenario(std::string_view text);
ScenarioDocument LoadScenario(const std::filesystem::path& path);
std::string FormatScenario(const ScenarioDocument& doc);

// Gammas from the geometry and threshold = beta * max expected gain.
Instance InstanceFromScenario(const ScenarioDocument& doc);

nlohmann::json SelectionResultToJson(const Instance& instance,
                                     const SelectionResult& result);

// ---- Sweep records ----------------------------------------------------

struct SweepRecord {
  int instance_id = 0;
  int n = 0;
  double gamma_max = 0.0;
  double beta = 0.0;
  Algorithm algorithm = Algorithm::kGreedy;
  IndexSet subset;
  double expected_gain = 0.0;
  double variance = 0.0;
  SuboptimalityRatio sr;
  int64_t wall_time_ns = 0;
};

// Grid of an SR sweep. Each (n, gamma_max, beta) cell runs
// instances_per_cell generated instances through every listed algorithm
// plus the oracle.
struct SweepSpec {
  std::vector<int> n_values;
  std::vector<double> gamma_max_values;
  std::vector<double> beta_values;
  int instances_per_cell = 100;
  uint64_t base_seed = 1;
  std::vector<Algorithm> algorithms = {Algorithm::kGreedy, Algorithm::kDlg,
                                       Algorithm::kDs};
  DsConfig ds_config;
};

// Nonempty lists, instances_per_cell >= 1, 0 < beta <= 1, gamma_max >= 0,
// 1 <= n <= 20 (the oracle is in the loop).
void ValidateSweepSpec(const SweepSpec& spec);

inline constexpr std::string_view kRecordCsvHeader =
    "instance_id,n,gamma_max,beta,algorithm,subset,expected_gain,variance,sr,"
    "wall_time_ns";

std::string FormatRecordsCsv(const std::vector<SweepRecord>& records);
std::vector<SweepRecord> ParseRecordsCsv(std::string_view text);
nlohmann::json RecordsToJson(const std::vector<SweepRecord>& records);

// Writes JSON when the path ends in ".json", CSV otherwise.
void SaveResults(const std::filesystem::path& path,
                 const std::vector<SweepRecord>& records);
std::vector<SweepRecord> LoadResultsCsv(const std::filesystem::path& path);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

// Shortest text that parses back to the same double.
std::string FormatDouble(double x);

}  // namespace beamsel

#endif  // BEAMSEL_INSTANCE_IO_H_
