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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "mcpool/adapt.hpp"
#include "text_util.hpp"

namespace mcpool {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t b = 0;
  for (;;) {
    const auto c = s.find(',', b);
    out.push_back(s.substr(b, c == std::string_view::npos ? s.npos : c - b));
    if (c == std::string_view::npos) break;
    b = c + 1;
  }
  return out;
}

double parse_double(std::string_view s, std::size_t line, const char* field) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ParseError(std::string("trace: invalid ") + field + " '" +
                         std::string(s) + "'",
                     line, 0);
  }
  return v;
}

template <class Int>
Int parse_int(std::string_view s, std::size_t line, const char* field) {
  Int v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ParseError(std::string("trace: invalid ") + field + " '" +
                         std::string(s) + "'",
                     line, 0);
  }
  return v;
}

}  // namespace

std::string format_trace_row(const AdaptRecord& r) {
  std::string s = std::to_string(r.iteration);
  s += ',';
  s += r.op;
  s += ',';
  s += num(r.max_grad);
  s += ',';
  s += num(r.energy);
  s += ',';
  if (r.error) s += num(*r.error);
  s += ',';
  s += std::to_string(r.params);
  s += ',';
  s += std::to_string(r.evals);
  return s;
}

std::string format_trace(const AdaptTrace& trace) {
  std::string out(kTraceHeader);
  out += '\n';
  for (const auto& r : trace.records) {
    out += format_trace_row(r);
    out += '\n';
  }
  if (trace.status) {
    out += "# status=" + to_string(*trace.status) + '\n';
  }
  return out;
}

void write_trace_header(std::ostream& out) {
  out << kTraceHeader << '\n';
  out.flush();
}

void write_trace_row(std::ostream& out, const AdaptRecord& r) {
  out << format_trace_row(r) << '\n';
  out.flush();
}

void write_trace_status(std::ostream& out, AdaptStatus status) {
  out << "# status=" << to_string(status) << '\n';
  out.flush();
}

AdaptTrace parse_trace(std::string_view text) {
  AdaptTrace trace;
  bool header = false;
  std::size_t line_no = 0;
  for (std::string_view raw : detail::lines(text)) {
    ++line_no;
    const auto line = detail::trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto body = detail::trim(line.substr(1));
      if (body.substr(0, 7) == "status=") {
        try {
          trace.status = parse_adapt_status(body.substr(7));
        } catch (const std::invalid_argument& e) {
          throw ParseError(e.what(), line_no, 0);
        }
      }
      continue;
    }
    if (!header) {
      if (line != kTraceHeader) {
        throw ParseError("trace: expected header '" + std::string(kTraceHeader) + "'",
                         line_no, 0);
      }
      header = true;
      continue;
    }
    const auto f = split_commas(line);
    if (f.size() != 7) {
      throw ParseError("trace: expected 7 fields, got " + std::to_string(f.size()),
                       line_no, 0);
    }
    AdaptRecord r;
    r.iteration = parse_int<int>(f[0], line_no, "iter");
    r.op = std::string(f[1]);
    r.max_grad = parse_double(f[2], line_no, "max_grad");
    r.energy = parse_double(f[3], line_no, "energy");
    if (!f[4].empty()) r.error = parse_double(f[4], line_no, "error");
    r.params = parse_int<std::size_t>(f[5], line_no, "params");
    r.evals = parse_int<std::size_t>(f[6], line_no, "evals");
    trace.records.push_back(std::move(r));
  }
  if (!header) throw ParseError("trace: missing header", 0, 0);
  return trace;
}

AdaptTrace load_trace(const std::string& path) {
  return parse_trace(detail::read_file(path));
}

}  // namespace mcpool
