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

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "beamsel/error.h"
#include "beamsel/rng.h"

namespace beamsel {
namespace {

using nlohmann::json;

[[noreturn]] void FieldError(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::kParse, "field '" + path + "': " + what);
}

[[noreturn]] void InvariantError(const std::string& path,
                                 const std::string& invariant) {
  throw Error(ErrorKind::kValidation,
              "field '" + path + "' violates invariant: " + invariant);
}

json ParseJson(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    int line = 1;
    int column = 1;
    const size_t limit = std::min<size_t>(e.byte > 0 ? e.byte - 1 : 0,
                                          text.size());
    for (size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorKind::kParse, "line " + std::to_string(line) +
                                       ", column " + std::to_string(column) +
                                       ": " + e.what());
  }
}

const json& Field(const json& object, const char* key,
                  const std::string& path) {
  if (!object.is_object()) FieldError(path, "expected an object");
  auto it = object.find(key);
  if (it == object.end()) {
    FieldError(path.empty() ? key : path + "." + key, "missing");
  }
  return *it;
}

std::string Join(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

double Number(const json& j, const std::string& path) {
  if (!j.is_number()) FieldError(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) InvariantError(path, "value must be finite");
  return x;
}

Vec3 ReadVec3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) {
    FieldError(path, "expected an array of 3 numbers");
  }
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    v[i] = Number(j[i], path + "[" + std::to_string(i) + "]");
  }
  return v;
}

Cov3 ReadCov3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) {
    FieldError(path, "expected a 3x3 array");
  }
  Cov3 m;
  for (int r = 0; r < 3; ++r) {
    const Vec3 row = ReadVec3(j[r], path + "[" + std::to_string(r) + "]");
    m.row(r) = row.transpose();
  }
  return m;
}

json Vec3ToJson(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

// Splits one CSV line, honoring double-quoted fields.
std::vector<std::string> SplitCsvLine(std::string_view line, int line_no) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (quoted) {
    throw Error(ErrorKind::kParse,
                "line " + std::to_string(line_no) + ": unterminated quote");
  }
  fields.push_back(std::move(current));
  return fields;
}

double ParseCsvDouble(const std::string& text, int line_no,
                      const char* column) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (text.empty() || ec != std::errc() ||
      ptr != text.data() + text.size()) {
    throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) +
                                       ", column '" + column +
                                       "': bad number '" + text + "'");
  }
  return value;
}

int64_t ParseCsvInt(const std::string& text, int line_no, const char* column) {
  int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (text.empty() || ec != std::errc() ||
      ptr != text.data() + text.size()) {
    throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) +
                                       ", column '" + column +
                                       "': bad integer '" + text + "'");
  }
  return value;
}

}  // namespace

std::string FormatDouble(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

Instance GenerateInstance(int n, double gamma_max, double beta,
                          uint64_t seed) {
  if (n < 1 || n > IndexSet::kMaxElements) {
    throw Error(ErrorKind::kInput,
                "instance size " + std::to_string(n) + " outside [1, 64]");
  }
  if (!(gamma_max >= 0.0) || !std::isfinite(gamma_max)) {
    throw Error(ErrorKind::kInput, "gamma_max must be finite and >= 0");
  }
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw Error(ErrorKind::kInput, "beta must lie in (0, 1]");
  }
  SplitMixStream stream(seed);
  std::vector<double> gammas(n);
  for (double& g : gammas) g = gamma_max * stream.NextUniform();
  Instance instance{GammaVector(std::move(gammas)), 0.0};
  instance.threshold = beta * MaxExpectedGain(instance.gammas);
  return instance;
}

uint64_t InstanceSeed(uint64_t base_seed, int n, double gamma_max,
                      double beta, int instance_index) {
  return HashKey(base_seed, {static_cast<uint64_t>(n), DoubleBits(gamma_max),
                             DoubleBits(beta),
                             static_cast<uint64_t>(instance_index)});
}

void ValidateSweepSpec(const SweepSpec& spec) {
  if (spec.n_values.empty() || spec.gamma_max_values.empty() ||
      spec.beta_values.empty() || spec.algorithms.empty()) {
    throw Error(ErrorKind::kInput, "sweep lists must be nonempty");
  }
  if (spec.instances_per_cell < 1) {
    throw Error(ErrorKind::kInput, "instances per cell must be >= 1");
  }
  for (int n : spec.n_values) {
    if (n < 1) throw Error(ErrorKind::kInput, "sweep n must be >= 1");
    if (n > kMaxOracleAgents) {
      throw Error(ErrorKind::kSize,
                  "sweep n = " + std::to_string(n) +
                      " exceeds the oracle limit of " +
                      std::to_string(kMaxOracleAgents));
    }
  }
  for (double g : spec.gamma_max_values) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw Error(ErrorKind::kInput, "gamma_max values must be finite, >= 0");
    }
  }
  for (double b : spec.beta_values) {
    if (!(b > 0.0 && b <= 1.0)) {
      throw Error(ErrorKind::kInput, "beta values must lie in (0, 1]");
    }
  }
  ValidateDsConfig(spec.ds_config);
}

Instance ParseInstance(std::string_view text) {
  const json doc = ParseJson(text);
  const json& gammas_json = Field(doc, "gammas", "");
  if (!gammas_json.is_array()) FieldError("gammas", "expected an array");
  if (gammas_json.empty() ||
      gammas_json.size() > static_cast<size_t>(IndexSet::kMaxElements)) {
    InvariantError("gammas", "length must lie in [1, 64]");
  }
  std::vector<double> gammas;
  for (size_t i = 0; i < gammas_json.size(); ++i) {
    const std::string path = "gammas[" + std::to_string(i) + "]";
    const double g = Number(gammas_json[i], path);
    if (g < 0.0) InvariantError(path, "effective error must be >= 0");
    gammas.push_back(g);
  }
  const double threshold = Number(Field(doc, "threshold", ""), "threshold");
  return Instance{GammaVector(std::move(gammas)), threshold};
}

std::string FormatInstance(const Instance& instance) {
  json doc;
  doc["gammas"] = json(std::vector<double>(instance.gammas.values().begin(),
                                           instance.gammas.values().end()));
  doc["threshold"] = instance.threshold;
  return doc.dump(2) + "\n";
}

Instance LoadInstance(const std::filesystem::path& path) {
  return ParseInstance(ReadFile(path));
}

void SaveInstance(const std::filesystem::path& path, const Instance& instance) {
  WriteFile(path, FormatInstance(instance));
}

ScenarioDocument ParseScenario(std::string_view text) {
  const json doc = ParseJson(text);
  ScenarioDocument out;
  out.scenario.client = ReadVec3(Field(doc, "client", ""), "client");
  out.scenario.wavelength =
      Number(Field(doc, "wavelength", ""), "wavelength");
  out.threshold_beta =
      Number(Field(doc, "threshold_beta", ""), "threshold_beta");
  if (!(out.threshold_beta > 0.0 && out.threshold_beta <= 1.0)) {
    InvariantError("threshold_beta", "must lie in (0, 1]");
  }
  const json& agents = Field(doc, "agents", "");
  if (!agents.is_array()) FieldError("agents", "expected an array");
  for (size_t i = 0; i < agents.size(); ++i) {
    const std::string path = "agents[" + std::to_string(i) + "]";
    AgentGeometry agent;
    agent.mu = ReadVec3(Field(agents[i], "mu", path), Join(path, "mu"));
    agent.sigma =
        ReadCov3(Field(agents[i], "sigma", path), Join(path, "sigma"));
    if (agents[i].contains("eta")) {
      agent.eta = Number(agents[i]["eta"], Join(path, "eta"));
    }
    out.scenario.agents.push_back(agent);
  }
  try {
    out.scenario = ValidateScenario(std::move(out.scenario));
  } catch (const Error& e) {
    throw Error(ErrorKind::kValidation,
                std::string("scenario violates invariant: ") + e.what());
  }
  return out;
}

ScenarioDocument LoadScenario(const std::filesystem::path& path) {
  return ParseScenario(ReadFile(path));
}

std::string FormatScenario(const ScenarioDocument& doc) {
  json out;
  out["client"] = Vec3ToJson(doc.scenario.client);
  out["wavelength"] = doc.scenario.wavelength;
  out["threshold_beta"] = doc.threshold_beta;
  json agents = json::array();
  for (const AgentGeometry& a : doc.scenario.agents) {
    json sigma = json::array();
    for (int r = 0; r < 3; ++r) {
      sigma.push_back(json::array({a.sigma(r, 0), a.sigma(r, 1),
                                   a.sigma(r, 2)}));
    }
    agents.push_back({{"mu", Vec3ToJson(a.mu)}, {"sigma", sigma},
                      {"eta", a.eta}});
  }
  out["agents"] = agents;
  return out.dump(2) + "\n";
}

Instance InstanceFromScenario(const ScenarioDocument& doc) {
  Instance instance{GammasFromScenario(doc.scenario), 0.0};
  instance.threshold = doc.threshold_beta * MaxExpectedGain(instance.gammas);
  return instance;
}

nlohmann::json SelectionResultToJson(const Instance& instance,
                                     const SelectionResult& result) {
  json out;
  out["algorithm"] = std::string(AlgorithmName(result.algorithm));
  out["subset"] = result.subset.ToOneBasedString();
  json indices = json::array();
  result.subset.ForEach([&](int i) { indices.push_back(i + 1); });
  out["subset_indices"] = indices;
  out["expected_gain"] = result.stats.mean;
  out["variance"] = result.stats.variance;
  out["threshold"] = instance.threshold;
  out["feasible"] = result.stats.mean >= instance.threshold;
  json diag;
  diag["iterations"] = result.diagnostics.iterations;
  diag["final_lambda"] = result.diagnostics.final_lambda
                             ? json(*result.diagnostics.final_lambda)
                             : json(nullptr);
  if (result.diagnostics.branch) {
    diag["branch"] =
        *result.diagnostics.branch == DlgBranch::kAscending ? "s1" : "s2";
  } else {
    diag["branch"] = nullptr;
  }
  out["diagnostics"] = diag;
  return out;
}

std::string FormatRecordsCsv(const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  out << kRecordCsvHeader << '\n';
  for (const SweepRecord& r : records) {
    out << r.instance_id << ',' << r.n << ',' << FormatDouble(r.gamma_max)
        << ',' << FormatDouble(r.beta) << ',' << AlgorithmName(r.algorithm)
        << ",\"" << r.subset.ToOneBasedString() << "\","
        << FormatDouble(r.expected_gain) << ',' << FormatDouble(r.variance)
        << ','
        << (r.sr.unbounded ? std::string("inf") : FormatDouble(r.sr.value))
        << ',' << r.wall_time_ns << '\n';
  }
  return out.str();
}

std::vector<SweepRecord> ParseRecordsCsv(std::string_view text) {
  std::vector<SweepRecord> records;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kRecordCsvHeader) {
        throw Error(ErrorKind::kParse,
                    "line 1: unexpected header '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    const std::vector<std::string> f = SplitCsvLine(line, line_no);
    if (f.size() != 10) {
      throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) +
                                         ": expected 10 columns, got " +
                                         std::to_string(f.size()));
    }
    SweepRecord r;
    r.instance_id = static_cast<int>(ParseCsvInt(f[0], line_no, "instance_id"));
    r.n = static_cast<int>(ParseCsvInt(f[1], line_no, "n"));
    r.gamma_max = ParseCsvDouble(f[2], line_no, "gamma_max");
    r.beta = ParseCsvDouble(f[3], line_no, "beta");
    try {
      r.algorithm = ParseAlgorithm(f[4]);
      r.subset = IndexSet::ParseOneBased(f[5]);
    } catch (const Error& e) {
      throw Error(ErrorKind::kParse,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
    r.expected_gain = ParseCsvDouble(f[6], line_no, "expected_gain");
    r.variance = ParseCsvDouble(f[7], line_no, "variance");
    const double sr = ParseCsvDouble(f[8], line_no, "sr");
    r.sr = std::isinf(sr) ? SuboptimalityRatio{sr, true}
                          : SuboptimalityRatio{sr, false};
    r.wall_time_ns = ParseCsvInt(f[9], line_no, "wall_time_ns");
    records.push_back(r);
  }
  if (!header_seen) throw Error(ErrorKind::kParse, "empty CSV document");
  return records;
}

nlohmann::json RecordsToJson(const std::vector<SweepRecord>& records) {
  json out = json::array();
  for (const SweepRecord& r : records) {
    out.push_back({
        {"instance_id", r.instance_id},
        {"n", r.n},
        {"gamma_max", r.gamma_max},
        {"beta", r.beta},
        {"algorithm", std::string(AlgorithmName(r.algorithm))},
        {"subset", r.subset.ToOneBasedString()},
        {"expected_gain", r.expected_gain},
        {"variance", r.variance},
        {"sr", r.sr.unbounded ? json("unbounded") : json(r.sr.value)},
        {"wall_time_ns", r.wall_time_ns},
    });
  }
  return out;
}

void SaveResults(const std::filesystem::path& path,
                 const std::vector<SweepRecord>& records) {
  if (path.extension() == ".json") {
    WriteFile(path, RecordsToJson(records).dump(2) + "\n");
  } else {
    WriteFile(path, FormatRecordsCsv(records));
  }
}

std::vector<SweepRecord> LoadResultsCsv(const std::filesystem::path& path) {
  return ParseRecordsCsv(ReadFile(path));
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kParse, "cannot open '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::kInput, "cannot write '" + path.string() + "'");
  }
  out << contents;
  if (!out) {
    throw Error(ErrorKind::kInput, "write to '" + path.string() + "' failed");
  }
}

}  // namespace beamsel
