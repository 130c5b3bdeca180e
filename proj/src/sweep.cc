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

#include "beamsel/sweep.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "beamsel/difference_of_submodular.h"
#include "beamsel/error.h"

namespace beamsel {
namespace {

struct Job {
  int n;
  double gamma_max;
  double beta;
  int instance_index;
};

template <typename Fn>
SelectionResult Timed(Fn&& fn, int64_t* elapsed_ns) {
  const auto start = std::chrono::steady_clock::now();
  SelectionResult result = fn();
  *elapsed_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return result;
}

SelectionResult RunAlgorithm(Algorithm algorithm, const Instance& instance,
                             const DsConfig& ds_config) {
  switch (algorithm) {
    case Algorithm::kGreedy:
      return Greedy(instance);
    case Algorithm::kDlg:
      return DoubleLoopGreedy(instance);
    case Algorithm::kDs:
      return DifferenceOfSubmodular(instance, ds_config);
    case Algorithm::kOracle:
      return BruteForceOracle(instance);
  }
  throw Error(ErrorKind::kInput, "unknown algorithm");
}

std::vector<SweepRecord> RunJob(const SweepSpec& spec, const Job& job) {
  const Instance instance =
      GenerateInstance(job.n, job.gamma_max, job.beta,
                       InstanceSeed(spec.base_seed, job.n, job.gamma_max,
                                    job.beta, job.instance_index));
  const auto record = [&](const SelectionResult& r, SuboptimalityRatio sr,
                          int64_t ns) {
    SweepRecord rec;
    rec.instance_id = job.instance_index;
    rec.n = job.n;
    rec.gamma_max = job.gamma_max;
    rec.beta = job.beta;
    rec.algorithm = r.algorithm;
    rec.subset = r.subset;
    rec.expected_gain = r.stats.mean;
    rec.variance = r.stats.variance;
    rec.sr = sr;
    rec.wall_time_ns = ns;
    return rec;
  };

  std::vector<SweepRecord> out;
  int64_t oracle_ns = 0;
  const SelectionResult oracle =
      Timed([&] { return BruteForceOracle(instance); }, &oracle_ns);
  for (Algorithm a : spec.algorithms) {
    if (a == Algorithm::kOracle) continue;
    int64_t ns = 0;
    const SelectionResult r =
        Timed([&] { return RunAlgorithm(a, instance, spec.ds_config); }, &ns);
    out.push_back(record(r, ComputeSuboptimalityRatio(r, oracle), ns));
  }
  out.push_back(record(oracle, SuboptimalityRatio{1.0, false}, oracle_ns));
  return out;
}

auto RecordKey(const SweepRecord& r) {
  return std::make_tuple(r.n, r.gamma_max, r.beta, r.instance_id,
                         static_cast<int>(r.algorithm));
}

}  // namespace

SweepSpec DefaultAverageSweep(bool full) {
  SweepSpec spec;
  spec.beta_values = {0.6};
  if (full) {
    spec.n_values = {4, 5, 6, 7, 8, 9, 10};
    spec.gamma_max_values = {1, 11, 21, 31, 41, 51};
    spec.instances_per_cell = 1000;
  } else {
    spec.n_values = {4, 5, 6, 7, 8};
    spec.gamma_max_values = {1, 21, 41};
    spec.instances_per_cell = 100;
  }
  return spec;
}

SweepSpec DefaultMaximumSweep(bool full) {
  SweepSpec spec;
  spec.gamma_max_values = {30};
  if (full) {
    spec.n_values = {4, 5, 6, 7, 8, 9, 10};
    spec.beta_values = {0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    spec.instances_per_cell = 1000;
  } else {
    spec.n_values = {4, 5, 6, 7, 8};
    spec.beta_values = {0.5, 0.7, 0.9};
    spec.instances_per_cell = 100;
  }
  return spec;
}

std::vector<SweepRecord> RunSweep(const SweepSpec& spec, int threads) {
  ValidateSweepSpec(spec);
  std::vector<Job> jobs;
  for (int n : spec.n_values) {
    for (double g : spec.gamma_max_values) {
      for (double b : spec.beta_values) {
        for (int i = 0; i < spec.instances_per_cell; ++i) {
          jobs.push_back({n, g, b, i});
        }
      }
    }
  }

  std::vector<std::vector<SweepRecord>> per_job(jobs.size());
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  const auto worker = [&] {
    for (size_t j = next++; j < jobs.size(); j = next++) {
      try {
        per_job[j] = RunJob(spec, jobs[j]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, threads);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<SweepRecord> records;
  for (auto& batch : per_job) {
    records.insert(records.end(), batch.begin(), batch.end());
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const SweepRecord& a, const SweepRecord& b) {
                     return RecordKey(a) < RecordKey(b);
                   });
  return records;
}

std::vector<CellSummary> SummarizeCells(
    const std::vector<SweepRecord>& records) {
  using Key = std::tuple<int, double, double, int>;
  std::map<Key, CellSummary> cells;
  std::map<Key, double> sums;
  for (const SweepRecord& r : records) {
    const Key key{r.n, r.gamma_max, r.beta, static_cast<int>(r.algorithm)};
    auto [it, inserted] = cells.try_emplace(key);
    CellSummary& c = it->second;
    if (inserted) {
      c.n = r.n;
      c.gamma_max = r.gamma_max;
      c.beta = r.beta;
      c.algorithm = r.algorithm;
      c.max_sr = 0.0;
    }
    ++c.instances;
    if (r.sr.unbounded) {
      ++c.unbounded;
      c.max_sr = std::numeric_limits<double>::infinity();
    } else {
      sums[key] += r.sr.value;
      c.max_sr = std::max(c.max_sr, r.sr.value);
    }
  }
  std::vector<CellSummary> out;
  for (auto& [key, c] : cells) {
    const int bounded = c.instances - c.unbounded;
    c.mean_sr = bounded > 0 ? sums[key] / bounded : 0.0;
    out.push_back(c);
  }
  return out;
}

std::string FormatSummaryCsv(const std::vector<CellSummary>& cells) {
  std::ostringstream out;
  out << kSummaryCsvHeader << '\n';
  for (const CellSummary& c : cells) {
    out << c.n << ',' << FormatDouble(c.gamma_max) << ','
        << FormatDouble(c.beta) << ',' << AlgorithmName(c.algorithm) << ','
        << c.instances << ',' << FormatDouble(c.mean_sr) << ','
        << FormatDouble(c.max_sr) << ',' << c.unbounded << '\n';
  }
  return out.str();
}

namespace {

std::vector<SoftViolation> Violations(const std::vector<CellSummary>& cells,
                                      const std::vector<Algorithm>& algorithms,
                                      double limit, bool use_max) {
  std::vector<SoftViolation> out;
  for (const CellSummary& c : cells) {
    if (std::find(algorithms.begin(), algorithms.end(), c.algorithm) ==
        algorithms.end()) {
      continue;
    }
    const double observed =
        use_max ? c.max_sr
                : (c.unbounded > 0 ? std::numeric_limits<double>::infinity()
                                   : c.mean_sr);
    if (observed >= limit) out.push_back({c, observed, limit});
  }
  return out;
}

}  // namespace

std::vector<SoftViolation> MeanSrViolations(
    const std::vector<CellSummary>& cells,
    const std::vector<Algorithm>& algorithms, double limit) {
  return Violations(cells, algorithms, limit, false);
}

std::vector<SoftViolation> MaxSrViolations(
    const std::vector<CellSummary>& cells,
    const std::vector<Algorithm>& algorithms, double limit) {
  return Violations(cells, algorithms, limit, true);
}

}  // namespace beamsel
