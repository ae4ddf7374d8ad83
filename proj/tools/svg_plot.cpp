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

#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace mcpool::cli {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo;
  double hi;
};

}  // namespace

std::string render_svg(const std::vector<Series>& series,
                       const PlotOptions& o) {
  const double left = 70, right = 20, top = o.title.empty() ? 20 : 40, bottom = 50;
  const double pw = o.width - left - right;
  const double ph = o.height - top - bottom;

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      const double y = s.y[i];
      if (!std::isfinite(y) || (o.log_y && y <= 0.0)) continue;
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (!std::isfinite(x_lo)) throw std::invalid_argument("nothing to plot");
  if (x_hi == x_lo) x_hi = x_lo + 1;

  Range yr;
  if (o.log_y) {
    if (!std::isfinite(y_lo)) {
      yr = {-16, 0};
    } else {
      yr = {std::floor(std::log10(y_lo)), std::ceil(std::log10(y_hi))};
      if (yr.hi == yr.lo) yr.hi = yr.lo + 1;
    }
  } else {
    if (!std::isfinite(y_lo)) y_lo = y_hi = 0;
    const double pad = y_hi > y_lo ? 0.05 * (y_hi - y_lo) : 1.0;
    yr = {y_lo - pad, y_hi + pad};
  }

  auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto py = [&](double y) {
    double t;
    if (o.log_y) {
      t = y > 0.0 ? std::log10(y) : yr.lo;
    } else {
      t = y;
    }
    t = std::clamp(t, yr.lo, yr.hi);
    return top + (yr.hi - t) / (yr.hi - yr.lo) * ph;
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(o.width) + "\" height=\"" + std::to_string(o.height) +
         "\" viewBox=\"0 0 " + std::to_string(o.width) + " " +
         std::to_string(o.height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!o.title.empty()) {
    svg += "<text x=\"" + fmt("%.2f", left + pw / 2) +
           "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" +
           escape(o.title) + "</text>\n";
  }
  svg += "<rect x=\"" + fmt("%.2f", left) + "\" y=\"" + fmt("%.2f", top) +
         "\" width=\"" + fmt("%.2f", pw) + "\" height=\"" + fmt("%.2f", ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";

  // y ticks: every decade on a log axis, five steps on a linear one.
  std::vector<std::pair<double, std::string>> yticks;
  if (o.log_y) {
    const int decades = static_cast<int>(yr.hi - yr.lo);
    const int step = std::max(1, decades / 8);
    for (int e = static_cast<int>(yr.lo); e <= static_cast<int>(yr.hi); e += step) {
      yticks.emplace_back(std::pow(10.0, e), "1e" + std::to_string(e));
    }
  } else {
    for (int i = 0; i <= 5; ++i) {
      const double v = yr.lo + (yr.hi - yr.lo) * i / 5.0;
      yticks.emplace_back(v, fmt("%.3g", v));
    }
  }
  for (const auto& [v, label] : yticks) {
    const double y = py(v);
    svg += "<line x1=\"" + fmt("%.2f", left - 4) + "\" y1=\"" + fmt("%.2f", y) +
           "\" x2=\"" + fmt("%.2f", left) + "\" y2=\"" + fmt("%.2f", y) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt("%.2f", left - 6) + "\" y=\"" + fmt("%.2f", y + 4) +
           "\" text-anchor=\"end\">" + escape(label) + "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const double v = x_lo + (x_hi - x_lo) * i / 5.0;
    const double x = px(v);
    svg += "<line x1=\"" + fmt("%.2f", x) + "\" y1=\"" + fmt("%.2f", top + ph) +
           "\" x2=\"" + fmt("%.2f", x) + "\" y2=\"" + fmt("%.2f", top + ph + 4) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt("%.2f", x) + "\" y=\"" + fmt("%.2f", top + ph + 16) +
           "\" text-anchor=\"middle\">" + fmt("%.4g", v) + "</text>\n";
  }
  svg += "<text x=\"" + fmt("%.2f", left + pw / 2) + "\" y=\"" +
         fmt("%.2f", o.height - 12.0) + "\" text-anchor=\"middle\">" +
         escape(o.x_label) + "</text>\n";

  for (const auto& s : series) {
    svg += "<polyline fill=\"none\" stroke=\"" + escape(s.color) +
           "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) svg += ' ';
      svg += fmt("%.2f", px(s.x[i])) + "," + fmt("%.2f", py(s.y[i]));
    }
    svg += "\"/>\n";
  }

  double ly = top + 14;
  for (const auto& s : series) {
    const double lx = left + pw - 130;
    svg += "<line x1=\"" + fmt("%.2f", lx) + "\" y1=\"" + fmt("%.2f", ly - 4) +
           "\" x2=\"" + fmt("%.2f", lx + 20) + "\" y2=\"" + fmt("%.2f", ly - 4) +
           "\" stroke=\"" + escape(s.color) + "\" stroke-width=\"1.5\"/>\n";
    svg += "<text x=\"" + fmt("%.2f", lx + 26) + "\" y=\"" + fmt("%.2f", ly) +
           "\">" + escape(s.label) + "</text>\n";
    ly += 16;
  }
  svg += "</svg>\n";
  return svg;
}

std::vector<Series> trace_series(const AdaptTrace& trace) {
  if (trace.records.empty()) throw std::invalid_argument("trace has no rows");
  Series error{"|E - E_ref|", "#1f77b4", {}, {}};
  Series grad{"max |gradient|", "#d62728", {}, {}};
  for (const auto& r : trace.records) {
    grad.x.push_back(r.iteration);
    grad.y.push_back(r.max_grad);
    if (r.error) {
      error.x.push_back(r.iteration);
      error.y.push_back(*r.error);
    }
  }
  std::vector<Series> out;
  if (!error.x.empty()) out.push_back(std::move(error));
  out.push_back(std::move(grad));
  return out;
}

}  // namespace mcpool::cli
