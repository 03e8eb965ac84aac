// Copyright 2026 The Authors.
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


// Static SVG line charts.

#ifndef INFOPLAN_BENCH_PLOT_H_
#define INFOPLAN_BENCH_PLOT_H_

#include <string>
#include <vector>

namespace infoplan::bench {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> err;  // optional half-height of error bars
  std::vector<std::string> point_labels;  // optional, drawn next to points
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

std::string RenderSvg(const Chart& chart);

}  // namespace infoplan::bench

#endif  // INFOPLAN_BENCH_PLOT_H_
