// Copyright 2026 The mcpool Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "mcpool/adapt.hpp"

namespace mcpool::cli {

struct Series {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  bool log_y = true;
  int width = 640;
  int height = 400;
  std::string title;
  std::string x_label = "iteration";
};

/// Standalone SVG line chart. Output depends only on the inputs. On a log
/// axis, non-positive values are drawn at the bottom edge.
std::string render_svg(const std::vector<Series>& series,
                       const PlotOptions& options);

/// Error and max-gradient series of a trace (error only when present).
/// Throws std::invalid_argument on an empty trace.
std::vector<Series> trace_series(const AdaptTrace& trace);

}  // namespace mcpool::cli
