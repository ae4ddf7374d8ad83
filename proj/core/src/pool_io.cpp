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

#include "mcpool/pool_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "mcpool/error.hpp"
#include "text_util.hpp"

namespace mcpool {

namespace {

std::optional<std::uint64_t> parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

void read_header(std::string_view comment, Pool& pool, std::size_t line_no) {
  const auto colon = comment.find(':');
  if (colon == std::string_view::npos) return;
  const auto key = detail::trim(comment.substr(0, colon));
  const auto value = detail::trim(comment.substr(colon + 1));
  if (key == "seed" || key == "attempts") {
    const auto v = parse_u64(value);
    if (!v) {
      throw ParseError(std::string(key) + ": expected an unsigned integer",
                       line_no, 0);
    }
    (key == "seed" ? pool.seed : pool.attempts) = *v;
  } else if (key == "level") {
    try {
      pool.level = parse_check_level(value);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_no, 0);
    }
  }
  // Other header keys are informational.
}

}  // namespace

Pool parse_pool(std::string_view text) {
  Pool pool;
  bool any_starter_mark = false;
  std::vector<bool> marks;
  std::size_t line_no = 0;
  for (std::string_view raw : detail::lines(text)) {
    ++line_no;
    const auto hash = raw.find('#');
    const auto body = detail::trim(raw.substr(0, hash));
    const auto comment = hash == std::string_view::npos
                             ? std::string_view{}
                             : detail::trim(raw.substr(hash + 1));
    if (body.empty()) {
      if (!comment.empty()) read_header(comment, pool, line_no);
      continue;
    }
    const std::size_t offset = static_cast<std::size_t>(body.data() - raw.data());
    if (detail::split_ws(body).size() != 1) {
      throw ParseError("expected one Pauli string per line", line_no, offset);
    }
    PauliString p;
    try {
      p = PauliString::parse(body);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no, offset + e.column());
    }
    if (pool.operators.empty()) {
      pool.n_qubits = p.num_qubits();
    } else if (p.num_qubits() != pool.n_qubits) {
      throw ParseError("string has " + std::to_string(p.num_qubits()) +
                           " qubits, earlier lines have " +
                           std::to_string(pool.n_qubits),
                       line_no, offset);
    }
    pool.operators.push_back(p);
    const bool starter = comment == "starter";
    any_starter_mark = any_starter_mark || starter;
    marks.push_back(starter);
  }
  if (pool.operators.empty()) throw ParseError("pool contains no strings", 0, 0);
  if (any_starter_mark) {
    pool.starter_flags = std::move(marks);
    for (bool b : pool.starter_flags) pool.starter_count += b ? 1 : 0;
  }
  return pool;
}

Pool load_pool(const std::string& path) {
  return parse_pool(detail::read_file(path));
}

std::string format_pool(const Pool& pool) {
  std::ostringstream out;
  out << "# qubits: " << pool.n_qubits << '\n';
  out << "# size: " << pool.operators.size() << '\n';
  if (pool.seed) out << "# seed: " << *pool.seed << '\n';
  if (pool.attempts) out << "# attempts: " << *pool.attempts << '\n';
  if (pool.level) out << "# level: " << to_string(*pool.level) << '\n';
  if (pool.spec && !pool.spec->name.empty()) {
    out << "# symmetry: " << pool.spec->name << '\n';
  }
  if (!pool.starter_flags.empty()) {
    out << "# starters: " << pool.starter_count << '\n';
  }
  for (std::size_t i = 0; i < pool.operators.size(); ++i) {
    out << pool.operators[i].str();
    if (i < pool.starter_flags.size() && pool.starter_flags[i]) {
      out << "  # starter";
    }
    out << '\n';
  }
  return out.str();
}

void save_pool(const Pool& pool, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write pool file '" + path + "'");
  out << format_pool(pool);
  if (!out) throw Error("failed writing pool file '" + path + "'");
}

void annotate_starters(Pool& pool, const SymmetrySpec& spec) {
  pool.starter_flags.clear();
  pool.starter_count = 0;
  for (const auto& p : pool.operators) {
    const bool s = is_starter(p, spec);
    pool.starter_flags.push_back(s);
    pool.starter_count += s ? 1 : 0;
  }
}

}  // namespace mcpool
