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

#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "mcpool/adapt.hpp"
#include "mcpool/group.hpp"
#include "mcpool/hamiltonian.hpp"
#include "mcpool/pool_io.hpp"
#include "mcpool/pool_search.hpp"
#include "mcpool/symmetry.hpp"
#include "svg_plot.hpp"

#ifndef MCPOOL_VERSION
#define MCPOOL_VERSION "unknown"
#endif

namespace mcpool::cli {

namespace fs = std::filesystem;

namespace {

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim_copy(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Mask parse_occupation(const std::string& bits, int n) {
  if (static_cast<int>(bits.size()) != n) {
    throw Error("--ref: expected " + std::to_string(n) +
                " binary digits (qubit 0 first), got '" + bits + "'");
  }
  Mask m = 0;
  for (int q = 0; q < n; ++q) {
    const char c = bits[static_cast<std::size_t>(q)];
    if (c == '1') {
      m |= Mask{1} << q;
    } else if (c != '0') {
      throw Error("--ref: invalid binary digit '" + std::string(1, c) + "'");
    }
  }
  return m;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
  if (!f) throw Error("failed writing '" + path + "'");
}

// Provenance record written next to every output file.
struct Manifest {
  std::vector<std::string> args;
  std::vector<std::string> inputs;
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::string> config;
  std::vector<std::string> outputs;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void write(const std::string& path) const {
    nlohmann::ordered_json j;
    std::string command;
    for (const auto& a : args) command += (command.empty() ? "" : " ") + a;
    j["command"] = command;
    j["args"] = args;
    j["inputs"] = inputs;
    j["seed"] = seed ? nlohmann::ordered_json(*seed) : nlohmann::ordered_json();
    j["config"] = config;
    j["outputs"] = outputs;
    j["version"] = MCPOOL_VERSION;
    j["duration_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_text(path, j.dump(2) + "\n");
  }

  void write_beside(const std::string& output) const {
    write(output + ".manifest.json");
  }
};

struct AdaptOptions {
  std::string hamiltonian;
  std::string pool;
  std::string ref;
  std::string symmetry;
  bool fci = false;
  std::optional<double> eref;
  double eps_grad = 1e-8;
  double eps_energy = 1e-8;
  std::optional<int> max_iters;
  std::string trace;
};

void add_adapt_options(CLI::App* cmd, AdaptOptions& o, bool with_files) {
  if (with_files) {
    cmd->add_option("--hamiltonian", o.hamiltonian, "Hamiltonian file")->required();
    cmd->add_option("--trace", o.trace, "trace CSV output")->required();
  }
  cmd->add_option("--pool", o.pool, "pool file")->required();
  cmd->add_option("--ref", o.ref, "reference occupation, qubit 0 first");
  cmd->add_option("--symmetry", o.symmetry, "symmetry spec file");
  cmd->add_flag("--fci", o.fci, "use the exact ground energy as reference");
  cmd->add_option("--eref", o.eref, "explicit reference energy");
  cmd->add_option("--eps-grad", o.eps_grad, "gradient stall threshold");
  cmd->add_option("--eps-energy", o.eps_energy, "energy convergence threshold");
  cmd->add_option("--max-iters", o.max_iters, "iteration cap (default 4*2^n)");
}

struct PreparedRun {
  Mask reference = 0;
  std::optional<double> e_ref;
  AdaptConfig config;
};

PreparedRun prepare_run(const AdaptOptions& o, const PauliSumHamiltonian& h,
                        const std::optional<SymmetrySpec>& spec) {
  PreparedRun r;
  const int n = h.num_qubits();
  if (!o.ref.empty()) {
    r.reference = parse_occupation(o.ref, n);
  } else if (spec) {
    r.reference = spec->hf_occupation;
  }
  if (spec && spec->n_qubits != n) {
    throw Error("symmetry spec has " + std::to_string(spec->n_qubits) +
                " qubits, Hamiltonian has " + std::to_string(n));
  }
  if (o.fci && o.eref) throw Error("--fci and --eref are mutually exclusive");
  if (o.eref) {
    r.e_ref = *o.eref;
  } else if (o.fci) {
    LanczosOptions lo;
    if (spec) {
      lo.sector_constraints = build_constraints(*spec);
      lo.sector_reference = r.reference;
    }
    r.e_ref = ground_energy(h, lo);
  }
  r.config.eps_grad = o.eps_grad;
  r.config.eps_energy = o.eps_energy;
  r.config.max_iters = o.max_iters;
  return r;
}

int exit_for(AdaptStatus s) {
  switch (s) {
    case AdaptStatus::converged: return kExitOk;
    case AdaptStatus::gradient_stall: return kExitStall;
    case AdaptStatus::iteration_cap: return kExitIterationCap;
  }
  return kExitError;
}

std::optional<SymmetrySpec> maybe_spec(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return load_symmetry_spec(path);
}

// ---- verbs ---------------------------------------------------------------

int pool_check(const std::string& pool_path, const std::string& symmetry,
               const std::string& level_text, const std::string& format,
               std::ostream& out) {
  const Pool pool = load_pool(pool_path);
  const auto spec = maybe_spec(symmetry);
  const CheckLevel level = level_text.empty() ? default_check_level(pool.n_qubits)
                                              : parse_check_level(level_text);
  const CompletenessReport report = check_pool(pool.operators, level, spec);
  out << (format == "kv" ? report.to_key_values() : report.to_text());
  return report.complete ? kExitOk : kExitIncomplete;
}

struct FindOptions {
  std::optional<int> qubits;
  std::string symmetry;
  std::optional<int> starters;
  std::uint64_t seed = 0;
  std::string level;
  std::uint64_t budget = 100000;
  std::string output;
};

int pool_find(const FindOptions& o, Manifest& manifest, std::ostream& out,
              std::ostream& err) {
  if (o.qubits.has_value() == !o.symmetry.empty()) {
    throw Error("pool find: give exactly one of --qubits or --symmetry");
  }
  SearchOptions search;
  search.attempt_budget = o.budget;
  Pool pool;
  if (o.qubits) {
    if (o.starters) throw Error("--starters requires --symmetry");
    const CheckLevel level =
        o.level.empty() ? default_check_level(*o.qubits) : parse_check_level(o.level);
    pool = random_mcp(*o.qubits, o.seed, level, search);
  } else {
    const SymmetrySpec spec = load_symmetry_spec(o.symmetry);
    manifest.inputs.push_back(o.symmetry);
    if (!o.starters) throw Error("--starters is required with --symmetry");
    const CheckLevel level = o.level.empty() ? default_check_level(spec.n_qubits)
                                             : parse_check_level(o.level);
    pool = symmetry_adapted_mcp(spec, *o.starters, o.seed, level, search);
  }
  manifest.seed = o.seed;
  err << "found pool after " << *pool.attempts << " attempt(s)\n";
  const std::string text = format_pool(pool);
  if (o.output.empty() || o.output == "-") {
    out << text;
  } else {
    write_text(o.output, text);
    manifest.outputs.push_back(o.output);
    manifest.write_beside(o.output);
  }
  return kExitOk;
}

struct RandomHamOptions {
  int qubits = 0;
  std::size_t terms = 0;
  std::uint64_t seed = 0;
  std::string symmetry;
  std::optional<int> max_flips;
  std::string output;
};

int ham_random(const RandomHamOptions& o, Manifest& manifest, std::ostream& out) {
  RandomHamiltonianOptions ro;
  if (!o.symmetry.empty()) {
    const SymmetrySpec spec = load_symmetry_spec(o.symmetry);
    if (spec.n_qubits != o.qubits) {
      throw Error("symmetry spec has " + std::to_string(spec.n_qubits) +
                  " qubits, --qubits is " + std::to_string(o.qubits));
    }
    ro.constraints = build_constraints(spec);
    manifest.inputs.push_back(o.symmetry);
  }
  ro.max_flip_weight = o.max_flips;
  const PauliSumHamiltonian h = random_real_hamiltonian(o.qubits, o.terms, o.seed, ro);
  manifest.seed = o.seed;
  const std::string text = format_hamiltonian(h);
  if (o.output.empty() || o.output == "-") {
    out << text;
  } else {
    write_text(o.output, text);
    manifest.outputs.push_back(o.output);
    manifest.write_beside(o.output);
  }
  return kExitOk;
}

int ham_fci(const std::string& path, const std::string& symmetry,
            const std::string& ref, std::ostream& out) {
  const PauliSumHamiltonian h = load_hamiltonian(path);
  LanczosOptions lo;
  if (const auto spec = maybe_spec(symmetry)) {
    lo.sector_constraints = build_constraints(*spec);
    lo.sector_reference =
        ref.empty() ? spec->hf_occupation : parse_occupation(ref, h.num_qubits());
  } else if (!ref.empty()) {
    throw Error("--ref needs --symmetry to select a sector");
  }
  out << num17(ground_energy(h, lo)) << '\n';
  return kExitOk;
}

int adapt_run(const AdaptOptions& o, Manifest& manifest, std::ostream& out,
              std::ostream& err) {
  const PauliSumHamiltonian h = load_hamiltonian(o.hamiltonian);
  const Pool pool = load_pool(o.pool);
  const auto spec = maybe_spec(o.symmetry);
  manifest.inputs = {o.hamiltonian, o.pool};
  if (spec) manifest.inputs.push_back(o.symmetry);
  const PreparedRun run = prepare_run(o, h, spec);

  std::ofstream trace(o.trace, std::ios::binary);
  if (!trace) throw Error("cannot write trace '" + o.trace + "'");
  write_trace_header(trace);
  manifest.outputs.push_back(o.trace);

  AdaptResult result;
  try {
    result = run_adapt(h, pool.operators, run.reference, run.config, run.e_ref,
                       [&](const AdaptRecord& r) { write_trace_row(trace, r); });
  } catch (const AdaptError& e) {
    trace << "# error=" << e.what() << '\n';
    trace.flush();
    manifest.write_beside(o.trace);
    throw;
  }
  for (const auto& w : result.trace.warnings) err << "warning: " << w << '\n';
  const AdaptStatus status = *result.trace.status;
  write_trace_status(trace, status);
  trace.close();
  manifest.write_beside(o.trace);

  const AdaptRecord& last = result.trace.last();
  out << "status=" << to_string(status) << '\n';
  out << "iterations=" << result.trace.iterations() << '\n';
  out << "energy=" << num17(last.energy) << '\n';
  if (last.error) out << "error=" << num17(*last.error) << '\n';
  return exit_for(status);
}

struct ScanOptions {
  std::string dir;
  AdaptOptions adapt;
  std::string output;
  std::string trace_dir;
};

struct ScanRow {
  std::string label;
  std::string energy;
  std::string error;
  std::string iterations;
  std::string status;
  std::string message;
};

int scan(const ScanOptions& o, Manifest& manifest, std::ostream& out,
         std::ostream& err) {
  if (!fs::is_directory(o.dir)) throw Error("--dir '" + o.dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(o.dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ham") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error("no .ham files in '" + o.dir + "'");

  const Pool pool = load_pool(o.adapt.pool);
  const auto spec = maybe_spec(o.adapt.symmetry);
  if (!o.trace_dir.empty()) fs::create_directories(o.trace_dir);

  std::vector<ScanRow> rows(files.size());
  auto process = [&](std::size_t i) {
    ScanRow& row = rows[i];
    row.label = files[i].stem().string();
    try {
      const PauliSumHamiltonian h = load_hamiltonian(files[i].string());
      const PreparedRun run = prepare_run(o.adapt, h, spec);
      const AdaptResult result =
          run_adapt(h, pool.operators, run.reference, run.config, run.e_ref);
      const AdaptRecord& last = result.trace.last();
      row.energy = num17(last.energy);
      row.error = last.error ? num17(*last.error) : "";
      row.iterations = std::to_string(result.trace.iterations());
      row.status = to_string(*result.trace.status);
      if (!o.trace_dir.empty()) {
        write_text((fs::path(o.trace_dir) / (row.label + ".csv")).string(),
                   format_trace(result.trace));
      }
    } catch (const ParseError& e) {
      row.status = "error";
      row.message = "line " + std::to_string(e.line()) + ": " + e.what();
    } catch (const std::exception& e) {
      row.status = "error";
      row.message = e.what();
    }
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(thread_count(), static_cast<unsigned>(files.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < files.size(); ++i) process(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool_threads;
    for (unsigned w = 0; w < workers; ++w) {
      pool_threads.emplace_back([&] {
        for (std::size_t i; (i = next++) < files.size();) process(i);
      });
    }
    for (auto& t : pool_threads) t.join();
  }

  std::string csv = "label,final_energy,error,iterations,status\n";
  bool failed = false;
  for (const auto& r : rows) {
    csv += r.label + "," + r.energy + "," + r.error + "," + r.iterations + "," +
           r.status + "\n";
    if (r.status == "error") {
      failed = true;
      err << "error: " << r.label << ": " << r.message << '\n';
    }
  }
  for (const auto& f : files) manifest.inputs.push_back(f.string());
  manifest.inputs.push_back(o.adapt.pool);
  if (o.output.empty() || o.output == "-") {
    out << csv;
  } else {
    write_text(o.output, csv);
    manifest.outputs.push_back(o.output);
    manifest.write_beside(o.output);
  }
  return failed ? kExitError : kExitOk;
}

int plot(const std::string& trace_path, const std::string& output, bool linear,
         const std::string& title, Manifest& manifest) {
  const AdaptTrace trace = load_trace(trace_path);
  PlotOptions po;
  po.log_y = !linear;
  po.title = title;
  write_text(output, render_svg(trace_series(trace), po));
  manifest.inputs.push_back(trace_path);
  manifest.outputs.push_back(output);
  manifest.write_beside(output);
  return kExitOk;
}

const std::set<std::string> kTopVerbs = {"pool", "ham", "adapt", "scan", "plot"};
const std::set<std::string> kNestedVerbs = {"pool", "ham", "adapt"};

}  // namespace

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path + "'");
  std::map<std::string, std::string> cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim_copy(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(path + ":" + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = trim_copy(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    cfg[key] = trim_copy(line.substr(eq + 1));
  }
  return cfg;
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::optional<std::string> config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw Error("--config needs a file argument");
      config = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!config) return rest;

  std::size_t verb_len = 0;
  if (!rest.empty() && kTopVerbs.count(rest[0])) {
    verb_len = 1;
    if (kNestedVerbs.count(rest[0]) && rest.size() > 1) verb_len = 2;
  }
  std::vector<std::string> injected;
  for (const auto& [key, value] : read_config(*config)) {
    if (value == "true") {
      injected.push_back("--" + key);
    } else if (value != "false") {
      injected.push_back("--" + key);
      injected.push_back(value);
    }
  }
  std::vector<std::string> out(rest.begin(), rest.begin() + static_cast<long>(verb_len));
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), rest.begin() + static_cast<long>(verb_len), rest.end());
  return out;
}

unsigned thread_count() {
  if (const char* env = std::getenv("MCPOOL_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out,
        std::ostream& err) {
  Manifest manifest;
  manifest.args = raw_args;
  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  for (std::size_t i = 0; i + 1 < raw_args.size(); ++i) {
    if (raw_args[i] == "--config") {
      try {
        manifest.config = read_config(raw_args[i + 1]);
      } catch (...) {
      }
    }
  }

  CLI::App app{"Operator pool construction and ADAPT-VQE simulation", "mcpool"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(MCPOOL_VERSION));

  auto* pool_cmd = app.add_subcommand("pool", "check or search operator pools");
  pool_cmd->require_subcommand(1);

  std::string check_path, check_symmetry, check_level, check_format = "text";
  auto* check = pool_cmd->add_subcommand("check", "verify pool completeness");
  check->add_option("pool", check_path, "pool file")->required();
  check->add_option("--symmetry", check_symmetry, "symmetry spec file");
  check->add_option("--level", check_level, "group | inseparable | algebra");
  check->add_option("--format", check_format, "text | kv")
      ->check(CLI::IsMember({"text", "kv"}));

  FindOptions find_opts;
  auto* find = pool_cmd->add_subcommand("find", "search for a random complete pool");
  find->add_option("--qubits", find_opts.qubits, "qubit count (unrestricted pool)");
  find->add_option("--symmetry", find_opts.symmetry, "symmetry spec file");
  find->add_option("--starters", find_opts.starters, "number of starters");
  find->add_option("--seed", find_opts.seed, "random seed");
  find->add_option("--level", find_opts.level, "group | inseparable | algebra");
  find->add_option("--budget", find_opts.budget, "attempt budget");
  find->add_option("-o,--output", find_opts.output, "output pool file");

  auto* ham_cmd = app.add_subcommand("ham", "generate or diagonalize Hamiltonians");
  ham_cmd->require_subcommand(1);
  RandomHamOptions ham_opts;
  auto* ham_random_cmd = ham_cmd->add_subcommand("random", "random real Hamiltonian");
  ham_random_cmd->add_option("--qubits", ham_opts.qubits, "qubit count")->required();
  ham_random_cmd->add_option("--terms", ham_opts.terms, "number of terms")->required();
  ham_random_cmd->add_option("--seed", ham_opts.seed, "random seed");
  ham_random_cmd->add_option("--symmetry", ham_opts.symmetry, "restrict to a symmetry spec");
  ham_random_cmd->add_option("--max-flips", ham_opts.max_flips, "maximum flip weight");
  ham_random_cmd->add_option("-o,--output", ham_opts.output, "output file");

  std::string fci_path, fci_symmetry, fci_ref;
  auto* fci = ham_cmd->add_subcommand("fci", "exact ground energy");
  fci->add_option("hamiltonian", fci_path, "Hamiltonian file")->required();
  fci->add_option("--symmetry", fci_symmetry, "restrict to the reference sector");
  fci->add_option("--ref", fci_ref, "sector reference occupation");

  auto* adapt_cmd = app.add_subcommand("adapt", "run ADAPT-VQE");
  adapt_cmd->require_subcommand(1);
  AdaptOptions adapt_opts;
  auto* adapt_run_cmd = adapt_cmd->add_subcommand("run", "single ADAPT run");
  add_adapt_options(adapt_run_cmd, adapt_opts, true);

  ScanOptions scan_opts;
  auto* scan_cmd = app.add_subcommand("scan", "ADAPT over a directory of .ham files");
  scan_cmd->add_option("--dir", scan_opts.dir, "directory of Hamiltonian files")->required();
  add_adapt_options(scan_cmd, scan_opts.adapt, false);
  scan_cmd->add_option("-o,--output", scan_opts.output, "summary CSV");
  scan_cmd->add_option("--trace-dir", scan_opts.trace_dir, "per-file trace directory");

  std::string plot_trace, plot_output, plot_title;
  bool plot_log = true, plot_linear = false;
  auto* plot_cmd = app.add_subcommand("plot", "SVG convergence plot of a trace");
  plot_cmd->add_option("--trace", plot_trace, "trace CSV")->required();
  plot_cmd->add_option("-o,--output", plot_output, "SVG output")->required();
  plot_cmd->add_flag("--log-y", plot_log, "logarithmic y axis (default)");
  plot_cmd->add_flag("--linear-y", plot_linear, "linear y axis");
  plot_cmd->add_option("--title", plot_title, "chart title");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (check->parsed()) {
      return pool_check(check_path, check_symmetry, check_level, check_format, out);
    }
    if (find->parsed()) return pool_find(find_opts, manifest, out, err);
    if (ham_random_cmd->parsed()) return ham_random(ham_opts, manifest, out);
    if (fci->parsed()) return ham_fci(fci_path, fci_symmetry, fci_ref, out);
    if (adapt_run_cmd->parsed()) return adapt_run(adapt_opts, manifest, out, err);
    if (scan_cmd->parsed()) return scan(scan_opts, manifest, out, err);
    if (plot_cmd->parsed()) {
      return plot(plot_trace, plot_output, plot_linear, plot_title, manifest);
    }
  } catch (const ParseError& e) {
    err << "parse error";
    if (e.line() > 0) err << " at line " << e.line() << ", column " << e.column() + 1;
    err << ": " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace mcpool::cli
