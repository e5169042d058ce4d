// Copyright 2026 The purify Authors
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

#include "purify/pipeline.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <unistd.h>

#include "purify/clifford.hpp"
#include "purify/config.hpp"
#include "purify/effective_hamiltonian.hpp"
#include "purify/ensemble.hpp"
#include "purify/error.hpp"
#include "purify/observables.hpp"

#ifndef PURIFY_VERSION
#define PURIFY_VERSION "0.0.0"
#endif

namespace purify {

namespace fs = std::filesystem;

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

template <class F>
int guarded(std::ostream& log, F&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    log << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const RuntimeFailure& e) {
    log << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::bad_alloc&) {
    log << "error: out of memory\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw RuntimeFailure("cannot create output directory " + dir + ": " + ec.message());
}

std::string join(const std::string& dir, const std::string& file) { return (fs::path(dir) / file).string(); }

struct CsvRow {
  std::size_t size = 0;
  double param = 0.0;
  std::string observable;
  double mean = 0.0;
  double std_error = 0.0;
};

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) out.push_back(cell);
  return out;
}

double csv_number(const std::string& s, const std::string& what, std::size_t line) {
  if (s == "nan") return std::nan("");
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError("csv line " + std::to_string(line) + ": bad " + what + " \"" + s + "\"");
}

std::vector<CsvRow> read_csv_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  std::vector<CsvRow> rows;
  std::string line;
  std::size_t number = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split_csv(line);
    if (!header) {
      if (line != "L,case,param,observable,mean,stderr,N,seed") {
        throw ValidationError("csv: expected header L,case,param,observable,mean,stderr,N,seed");
      }
      header = true;
      continue;
    }
    if (cells.size() != 8) throw ValidationError("csv line " + std::to_string(number) + ": expected 8 columns");
    CsvRow r;
    const double l = csv_number(cells[0], "L", number);
    if (!(l > 0) || l != std::floor(l)) throw ValidationError("csv line " + std::to_string(number) + ": bad L");
    r.size = static_cast<std::size_t>(l);
    r.param = csv_number(cells[2], "param", number);
    r.observable = cells[3];
    r.mean = csv_number(cells[4], "mean", number);
    r.std_error = csv_number(cells[5], "stderr", number);
    rows.push_back(std::move(r));
  }
  if (!header) throw ValidationError("csv: missing header in " + path);
  return rows;
}

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

std::string tool_version() { return PURIFY_VERSION; }

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuntimeFailure("cannot read " + path + " for hashing");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw RuntimeFailure("sha256 unavailable");
  }
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return hex.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw RuntimeFailure("cannot write " + tmp);
    out << contents;
    out.flush();
    if (!out) throw RuntimeFailure("write failed for " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw RuntimeFailure("cannot rename " + tmp + " to " + path + ": " + ec.message());
  }
}

ScalingDataset read_scaling_csv(const std::string& path, const std::string& observable) {
  std::vector<ScalingRow> rows;
  for (const auto& r : read_csv_rows(path)) {
    if (r.observable == observable) rows.push_back({r.size, r.param, r.mean, r.std_error});
  }
  if (rows.empty()) throw ValidationError("csv: no rows for observable \"" + observable + "\" in " + path);
  return ScalingDataset(std::move(rows));
}

int cmd_simulate(const SimulateOptions& options, std::ostream& log) {
  return guarded(log, [&] {
    const std::string started = utc_now();
    ExperimentConfig cfg = load_config(options.config_path);
    if (cfg.sizes.empty()) throw ValidationError("grid: simulate needs a [grid] section");
    if (options.seed) cfg.run.seed = *options.seed;
    if (options.workers) {
      if (*options.workers == 0) throw ValidationError("--workers: must be positive");
      cfg.workers = *options.workers;
    }
    if (options.observable) cfg.run.observables = *options.observable;
    if (options.profile_anchor) cfg.run.profile_anchor = *options.profile_anchor;
    validate(cfg.run);
    ensure_dir(options.out_dir);

    const nlohmann::json echo = to_json(cfg);
    SweepOptions sweep_opt;
    sweep_opt.workers = cfg.workers;
    sweep_opt.keep_samples = true;
    sweep_opt.checkpoint_path = join(options.out_dir, "checkpoint.jsonl");
    const auto grid = make_grid(cfg.sizes, cfg.params);
    sweep_opt.on_point = [&](std::size_t i, const EnsembleResult& r) {
      log << "point " << (i + 1) << "/" << grid.size() << " L=" << r.config.num_qubits << " "
          << r.config.parameter_name() << "=" << format_double(grid[i].parameter) << '\n';
    };
    const auto rows = sweep(grid, cfg.run, sweep_opt);

    std::ostringstream csv, jsonl;
    write_ensemble_csv(csv, echo, rows);
    write_samples_jsonl(jsonl, echo, rows);
    const std::string csv_path = join(options.out_dir, "ensemble.csv");
    const std::string jsonl_path = join(options.out_dir, "samples.jsonl");
    write_file_atomic(csv_path, csv.str());
    write_file_atomic(jsonl_path, jsonl.str());

    nlohmann::json failures = nlohmann::json::array();
    for (const auto& r : rows) {
      if (!r.result) failures.push_back({{"L", r.point.num_qubits}, {"param", r.point.parameter}, {"error", r.error}});
    }
    nlohmann::json outputs = nlohmann::json::array();
    for (const auto& [name, path] : {std::pair{"ensemble.csv", csv_path}, std::pair{"samples.jsonl", jsonl_path}}) {
      outputs.push_back({{"file", name}, {"sha256", sha256_file(path)}, {"bytes", fs::file_size(path)}});
    }
    const nlohmann::json manifest = {{"tool", "purify"},
                                     {"version", tool_version()},
                                     {"config", echo},
                                     {"config_path", options.config_path},
                                     {"config_sha256", sha256_file(options.config_path)},
                                     {"master_seed", cfg.run.seed},
                                     {"workers", cfg.workers},
                                     {"started", started},
                                     {"finished", utc_now()},
                                     {"outputs", outputs},
                                     {"failed_points", failures}};
    write_file_atomic(join(options.out_dir, "manifest.json"), manifest.dump(2) + "\n");

    if (!failures.empty()) {
      log << "error: " << failures.size() << " grid point(s) failed; checkpoint kept at " << sweep_opt.checkpoint_path
          << '\n';
      return static_cast<int>(kExitRuntime);
    }
    fs::remove(sweep_opt.checkpoint_path);
    log << "wrote " << csv_path << '\n';
    return static_cast<int>(kExitOk);
  });
}

int cmd_collapse(const FitInput& input, const CollapseGuess& guess, std::ostream& log) {
  return guarded(log, [&] {
    const auto data = read_scaling_csv(input.csv_path, input.observable);
    const auto r = collapse(data, guess);
    ensure_dir(input.out_dir);
    const nlohmann::json report = {{"observable", input.observable},
                                   {"input", input.csv_path},
                                   {"sizes", data.sizes()},
                                   {"p_c", r.p_c},
                                   {"p_c_error", r.p_c_error},
                                   {"nu", r.nu},
                                   {"nu_error", r.nu_error},
                                   {"zeta", r.zeta},
                                   {"zeta_error", r.zeta_error},
                                   {"S_min", finite_or_null(r.quality)},
                                   {"evaluations", r.evaluations},
                                   {"flagged", r.flagged},
                                   {"flag_reason", r.flag_reason}};
    write_file_atomic(join(input.out_dir, "collapse_report.json"), report.dump(2) + "\n");
    std::ostringstream pts;
    pts << "x,y,dy,L\n";
    if (std::isfinite(r.quality)) {
      for (const auto& p : collapsed_coordinates(data, r.p_c, r.nu, r.zeta)) {
        pts << format_double(p.x) << ',' << format_double(p.y) << ',' << format_double(p.dy) << ',' << p.size << '\n';
      }
    }
    write_file_atomic(join(input.out_dir, "collapsed.csv"), pts.str());
    log << "p_c = " << r.p_c << " +- " << r.p_c_error << ", nu = " << r.nu << " +- " << r.nu_error
        << ", zeta = " << r.zeta << " +- " << r.zeta_error << ", S_min = " << r.quality << '\n';
    if (r.flagged) {
      log << "flagged: " << r.flag_reason << '\n';
      return static_cast<int>(kExitFlagged);
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_fit_powerlaw(const FitInput& input, double parameter, std::ostream& log) {
  return guarded(log, [&] {
    const auto data = read_scaling_csv(input.csv_path, input.observable);
    std::vector<double> sizes, values;
    for (const auto& r : data.rows()) {
      if (std::abs(r.p - parameter) <= 1e-9 * std::max(1.0, std::abs(parameter))) {
        sizes.push_back(static_cast<double>(r.size));
        values.push_back(r.mean);
      }
    }
    const auto fit = powerlaw_fit(sizes, values);
    ensure_dir(input.out_dir);
    const nlohmann::json report = {{"observable", input.observable}, {"parameter", parameter},
                                   {"a", fit.amplitude},             {"a_error", fit.amplitude_error},
                                   {"b", fit.exponent},              {"b_error", fit.exponent_error},
                                   {"points", fit.points}};
    write_file_atomic(join(input.out_dir, "powerlaw_report.json"), report.dump(2) + "\n");
    log << "a = " << fit.amplitude << " +- " << fit.amplitude_error << ", b = " << fit.exponent << " +- "
        << fit.exponent_error << '\n';
    return static_cast<int>(kExitOk);
  });
}

int cmd_fit_purity(const FitInput& input, std::ostream& log) {
  return guarded(log, [&] {
    const auto data = read_scaling_csv(input.csv_path, input.observable);
    const auto fit = purity_transition_fit(data);
    ensure_dir(input.out_dir);
    const nlohmann::json report = {{"observable", input.observable},
                                   {"L", fit.size},
                                   {"alpha", fit.amplitude},
                                   {"alpha_error", fit.amplitude_error},
                                   {"p_c", fit.p_c},
                                   {"p_c_error", fit.p_c_error},
                                   {"nu", fit.nu},
                                   {"nu_error", fit.nu_error},
                                   {"reduced_chi2", finite_or_null(fit.reduced_chi2)},
                                   {"points_used", fit.points_used},
                                   {"flagged", fit.flagged},
                                   {"flag_reason", fit.flag_reason}};
    write_file_atomic(join(input.out_dir, "purity_fit_report.json"), report.dump(2) + "\n");
    log << "alpha = " << fit.amplitude << ", p_c = " << fit.p_c << " +- " << fit.p_c_error << ", nu = " << fit.nu
        << " +- " << fit.nu_error << " (L = " << fit.size << ")\n";
    if (fit.flagged) {
      log << "flagged: " << fit.flag_reason << '\n';
      return static_cast<int>(kExitFlagged);
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_effham(const EffhamOptions& options, std::ostream& log) {
  return guarded(log, [&] {
    if (options.num_sites > kMaxHeffSites || options.num_sites < 2) {
      throw ValidationError("effham.L: L must be in [2, " + std::to_string(kMaxHeffSites) + "], got " +
                            std::to_string(options.num_sites));
    }
    if (options.print_coefficients) {
      const auto c = verify_hnn_coefficients();
      log << "ZZ " << c.zz << "\nYY " << c.yy << "\nX " << c.x << "\nidentity " << c.identity << '\n';
    }
    const auto rows = gamma_sweep(options.num_sites, options.gammas, options.amplitude);
    const Eigen::VectorXd v0 = identity_supervector(options.num_sites);
    std::ostringstream csv;
    csv << "gamma,E0,E1,gap,degenerate";
    for (std::size_t j = 0; j < options.num_sites; ++j) csv << ",X_" << j;
    csv << ",evolved_overlap\n";
    for (const auto& row : rows) {
      const auto h = build_heff(HeffSpec::uniform(options.num_sites, row.gamma, options.amplitude));
      // Max row sum bounds the spectral norm of a symmetric matrix.
      const double bound = h.cwiseAbs().rowwise().sum().maxCoeff();
      double dtau = options.dtau;
      if (!(dtau * bound < 1.0)) {
        dtau = 0.99 / bound;
        log << "gamma=" << format_double(row.gamma) << ": dtau reduced to " << dtau << '\n';
      }
      const auto evolved = imaginary_time_evolve(h, v0, dtau, options.steps);
      const auto gs = ground_state(h);
      const double overlap = (gs.space.transpose() * evolved.final_state).norm();
      csv << format_double(row.gamma) << ',' << format_double(row.energy) << ',' << format_double(row.first_excited)
          << ',' << format_double(row.gap) << ',' << (row.degenerate ? 1 : 0);
      for (double m : row.magnetization) csv << ',' << format_double(m);
      csv << ',' << format_double(overlap) << '\n';
    }
    ensure_dir(options.out_dir);
    write_file_atomic(join(options.out_dir, "effham.csv"), csv.str());
    log << "wrote " << join(options.out_dir, "effham.csv") << " (" << rows.size() << " rows)\n";
    return static_cast<int>(kExitOk);
  });
}

int cmd_selftest(std::ostream& log) {
  return guarded(log, [&] {
    bool ok = true;
    auto report = [&](const std::string& what, bool pass) {
      log << (pass ? "PASS " : "FAIL ") << what << '\n';
      ok = ok && pass;
    };
    const auto& table = CliffordTable::instance();
    report("two-qubit Clifford table has 11520 elements", table.size() == kTwoQubitCliffordCount);
    bool symplectic = true;
    for (std::size_t k = 0; k < kSymplecticCount; ++k) symplectic = symplectic && is_symplectic(symplectic_from_index(k));
    report("all 720 indexed matrices are symplectic", symplectic);

    const auto c = verify_hnn_coefficients();
    report("pair coefficients (-2/5, -1/10, 1/5)",
           std::abs(c.zz + 0.4) < 1e-12 && std::abs(c.yy + 0.1) < 1e-12 && std::abs(c.x - 0.2) < 1e-12);

    RunConfig cfg;
    cfg.num_qubits = 16;
    cfg.p = 1.0;
    cfg.t_steps = 1;
    report("full measurement purifies in one step", *run_trajectory(cfg, 0).snapshots.back().purity == 0);
    cfg.p = 0.0;
    cfg.t_steps = 20;
    report("unitaries alone keep the state maximally mixed", *run_trajectory(cfg, 0).snapshots.back().purity == 16);
    cfg.p = 0.12;
    cfg.check_invariants = true;
    cfg.record_every = 1;
    bool invariants = true;
    for (std::size_t s = 0; s < 5; ++s) invariants = invariants && !run_trajectory(cfg, s).snapshots.empty();
    report("tableau invariants hold along seeded trajectories", invariants);
    return static_cast<int>(ok ? kExitOk : kExitRuntime);
  });
}

}  // namespace purify
