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

#include "beamsel/render.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "beamsel/error.h"

namespace beamsel {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                    "#bcbd22", "#17becf"};

std::string Fixed(double x, int digits) {
  if (std::isinf(x)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string Tag(double x) {
  std::string s = Fixed(x, 3);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  std::replace(s.begin(), s.end(), '.', 'p');
  return s;
}

std::string HeatColor(double sr, double hi) {
  if (std::isinf(sr)) return "#9e9e9e";
  const double t = std::clamp((sr - 1.0) / std::max(1e-12, hi - 1.0), 0.0, 1.0);
  const int r = static_cast<int>(std::lround(255 - t * 55));
  const int g = static_cast<int>(std::lround(255 - t * 225));
  const int b = static_cast<int>(std::lround(255 - t * 225));
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

void SvgOpen(std::ostringstream& svg, int width, int height) {
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

Chart Heatmap(Algorithm algorithm, double beta, bool tag_beta,
              const std::vector<CellSummary>& cells) {
  std::set<int> ns;
  std::set<double> gmaxes;
  std::map<std::pair<int, double>, double> value;
  for (const CellSummary& c : cells) {
    ns.insert(c.n);
    gmaxes.insert(c.gamma_max);
    value[{c.n, c.gamma_max}] =
        c.unbounded > 0 ? std::numeric_limits<double>::infinity() : c.mean_sr;
  }
  double hi = 2.0;
  for (const auto& [k, v] : value) {
    if (std::isfinite(v)) hi = std::max(hi, v);
  }

  const int cell_w = 72;
  const int cell_h = 36;
  const int left = 70;
  const int top = 50;
  const int width = left + cell_w * static_cast<int>(gmaxes.size()) + 20;
  const int height = top + cell_h * static_cast<int>(ns.size()) + 50;
  std::ostringstream svg;
  SvgOpen(svg, width, height);
  svg << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-size=\"14\">Mean SR, " << AlgorithmName(algorithm)
      << " (beta = " << Fixed(beta, 2) << ")</text>\n";

  int row = 0;
  for (int n : ns) {
    const int y = top + row * cell_h;
    svg << "<text x=\"" << left - 8 << "\" y=\"" << y + cell_h / 2 + 4
        << "\" text-anchor=\"end\">N=" << n << "</text>\n";
    int col = 0;
    for (double g : gmaxes) {
      const int x = left + col * cell_w;
      auto it = value.find({n, g});
      if (it != value.end()) {
        svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell_w
            << "\" height=\"" << cell_h << "\" fill=\""
            << HeatColor(it->second, hi) << "\" stroke=\"#444\"/>\n"
            << "<text x=\"" << x + cell_w / 2 << "\" y=\"" << y + cell_h / 2 + 4
            << "\" text-anchor=\"middle\">" << Fixed(it->second, 3)
            << "</text>\n";
      }
      ++col;
    }
    ++row;
  }
  int col = 0;
  const int axis_y = top + cell_h * static_cast<int>(ns.size()) + 18;
  for (double g : gmaxes) {
    svg << "<text x=\"" << left + col * cell_w + cell_w / 2 << "\" y=\""
        << axis_y << "\" text-anchor=\"middle\">" << Fixed(g, 1)
        << "</text>\n";
    ++col;
  }
  svg << "<text x=\"" << left + cell_w * static_cast<int>(gmaxes.size()) / 2
      << "\" y=\"" << axis_y + 20
      << "\" text-anchor=\"middle\">gamma_max</text>\n</svg>\n";

  std::string name = "heatmap_" + std::string(AlgorithmName(algorithm));
  if (tag_beta) name += "_beta_" + Tag(beta);
  return {name + ".svg", svg.str()};
}

Chart MaxSrLines(Algorithm algorithm, double gamma_max, bool tag_gmax,
                 const std::vector<CellSummary>& cells) {
  std::set<double> betas;
  std::map<int, std::map<double, double>> lines;
  double hi = 1.5;
  for (const CellSummary& c : cells) {
    betas.insert(c.beta);
    lines[c.n][c.beta] = c.max_sr;
    if (std::isfinite(c.max_sr)) hi = std::max(hi, c.max_sr);
  }
  hi *= 1.05;
  const double lo = 1.0;
  const double beta_lo = *betas.begin();
  const double beta_hi = *betas.rbegin();

  const int left = 60;
  const int top = 40;
  const int plot_w = 420;
  const int plot_h = 260;
  const int width = left + plot_w + 110;
  const int height = top + plot_h + 60;
  const auto px = [&](double beta) {
    const double span = beta_hi - beta_lo;
    return left + (span > 0 ? (beta - beta_lo) / span : 0.5) * plot_w;
  };
  const auto py = [&](double sr) {
    return top + plot_h - (sr - lo) / (hi - lo) * plot_h;
  };

  std::ostringstream svg;
  SvgOpen(svg, width, height);
  svg << "<text x=\"" << left + plot_w / 2
      << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">Max SR, "
      << AlgorithmName(algorithm) << " (gamma_max = " << Fixed(gamma_max, 1)
      << ")</text>\n"
      << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double sr = lo + (hi - lo) * k / 4.0;
    svg << "<text x=\"" << left - 6 << "\" y=\"" << Fixed(py(sr) + 4, 1)
        << "\" text-anchor=\"end\">" << Fixed(sr, 2) << "</text>\n";
  }
  for (double b : betas) {
    svg << "<text x=\"" << Fixed(px(b), 1) << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"middle\">" << Fixed(b, 2) << "</text>\n";
  }
  svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << top + plot_h + 40
      << "\" text-anchor=\"middle\">beta</text>\n";

  int line = 0;
  for (const auto& [n, points] : lines) {
    const char* color = kPalette[line % std::size(kPalette)];
    std::string path;
    for (const auto& [b, sr] : points) {
      if (!std::isfinite(sr)) continue;
      path += (path.empty() ? "" : " ") + Fixed(px(b), 1) + "," +
              Fixed(py(sr), 1);
    }
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"" << path << "\"/>\n";
    for (const auto& [b, sr] : points) {
      if (!std::isfinite(sr)) continue;
      svg << "<circle cx=\"" << Fixed(px(b), 1) << "\" cy=\""
          << Fixed(py(sr), 1) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const int ly = top + 14 + line * 18;
    svg << "<line x1=\"" << left + plot_w + 14 << "\" y1=\"" << ly - 4
        << "\" x2=\"" << left + plot_w + 34 << "\" y2=\"" << ly - 4
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << left + plot_w + 40 << "\" y=\"" << ly << "\">N="
        << n << "</text>\n";
    ++line;
  }
  svg << "</svg>\n";

  std::string name = "maxsr_" + std::string(AlgorithmName(algorithm));
  if (tag_gmax) name += "_gmax_" + Tag(gamma_max);
  return {name + ".svg", svg.str()};
}

}  // namespace

std::vector<Chart> RenderCharts(const std::vector<SweepRecord>& records) {
  std::vector<CellSummary> cells;
  for (const CellSummary& c : SummarizeCells(records)) {
    if (c.algorithm != Algorithm::kOracle) cells.push_back(c);
  }
  if (cells.empty()) {
    throw Error(ErrorKind::kParse, "no algorithm records to render");
  }
  std::set<double> gmaxes;
  std::set<double> betas;
  std::set<int> algorithms;
  for (const CellSummary& c : cells) {
    gmaxes.insert(c.gamma_max);
    betas.insert(c.beta);
    algorithms.insert(static_cast<int>(c.algorithm));
  }

  std::vector<Chart> charts;
  const bool heatmaps = gmaxes.size() >= 2 || betas.size() == 1;
  const bool lines = betas.size() >= 2;
  for (int a : algorithms) {
    const Algorithm algorithm = static_cast<Algorithm>(a);
    if (heatmaps) {
      for (double b : betas) {
        std::vector<CellSummary> subset;
        for (const CellSummary& c : cells) {
          if (c.algorithm == algorithm && c.beta == b) subset.push_back(c);
        }
        charts.push_back(Heatmap(algorithm, b, betas.size() > 1, subset));
      }
    }
    if (lines) {
      for (double g : gmaxes) {
        std::vector<CellSummary> subset;
        for (const CellSummary& c : cells) {
          if (c.algorithm == algorithm && c.gamma_max == g) subset.push_back(c);
        }
        charts.push_back(MaxSrLines(algorithm, g, gmaxes.size() > 1, subset));
      }
    }
  }
  return charts;
}

std::vector<std::filesystem::path> WriteCharts(
    const std::vector<SweepRecord>& records,
    const std::filesystem::path& out_dir) {
  const std::vector<Chart> charts = RenderCharts(records);
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> paths;
  for (const Chart& chart : charts) {
    const std::filesystem::path path = out_dir / chart.file_name;
    WriteFile(path, chart.svg);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace beamsel
