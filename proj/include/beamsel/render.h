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

#ifndef BEAMSEL_RENDER_H_
#define BEAMSEL_RENDER_H_

#include <filesystem>
#include <string>
#include <vector>

#include "beamsel/sweep.h"

namespace beamsel {

struct Chart {
  std::string file_name;
  std::string svg;
};

// Self-contained SVG charts from sweep records:
//  - one heatmap of mean SR over (N, gamma_max) per algorithm, when the
//    records span several gamma_max values (or a single grid point);
//  - one line chart of max SR against beta per algorithm (a line per N),
//    when they span several beta values.
// Oracle rows are skipped. Output is a pure function of the records.
std::vector<Chart> RenderCharts(const std::vector<SweepRecord>& records);

// Writes the charts into `out_dir` (created if needed); returns the paths.
std::vector<std::filesystem::path> WriteCharts(
    const std::vector<SweepRecord>& records,
    const std::filesystem::path& out_dir);

}  // namespace beamsel

#endif  // BEAMSEL_RENDER_H_
