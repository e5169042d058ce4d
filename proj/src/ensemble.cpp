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

#include "purify/ensemble.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <new>
#include <thread>
#include <unordered_set>

#include "purify/error.hpp"

namespace purify {

const ObservableSummary* EnsembleResult::find(const std::string& name) const {
  for (const auto& o : observables) {
    if (o.name == name) return &o;
  }
  return nullptr;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

ObservableSummary summarize(std::string name, std::span<const double> values) {
  ObservableSummary s;
  s.name = std::move(name);
  s.count = values.size();
  if (values.empty()) {
    s.mean = std::numeric_limits<double>::quiet_NaN();
    s.std_error = s.mean;
    return s;
  }
  const double n = static_cast<double>(values.size());
  s.mean = pairwise_sum(values) / n;
  if (values.size() < 2) {
    s.std_error = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  std::vector<double> dev(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) dev[i] = (values[i] - s.mean) * (values[i] - s.mean);
  s.std_error = std::sqrt(pairwise_sum(dev) / (n - 1.0) / n);
  return s;
}

EnsembleResult run_ensemble(const RunConfig& cfg, const EnsembleOptions& options) {
  validate(cfg);
  CliffordTable::instance();  // build before workers start

  std::vector<TrajectoryRecord> records(cfg.samples);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t s = next.fetch_add(1);
      if (s >= cfg.samples) return;
      try {
        records[s] = run_trajectory(cfg, s);
      } catch (const std::bad_alloc&) {
        std::lock_guard lock(error_mutex);
        if (!error) {
          error = std::make_exception_ptr(
              RuntimeFailure("resource exhaustion while running sample " + std::to_string(s)));
        }
        failed = true;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, cfg.samples));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  EnsembleResult result;
  result.config = cfg;
  std::vector<double> values(cfg.samples);
  auto collect = [&](const std::string& name, auto&& get) {
    for (std::size_t s = 0; s < cfg.samples; ++s) values[s] = get(records[s].snapshots.back());
    result.observables.push_back(summarize(name, values));
  };
  if (cfg.records_purity()) {
    collect("purity", [](const Snapshot& snap) { return static_cast<double>(*snap.purity); });
  }
  if (cfg.records_mbn()) {
    collect("mbn", [](const Snapshot& snap) { return static_cast<double>(*snap.mbn); });
  }
  for (std::size_t l = 1; l <= cfg.profile_lmax; ++l) {
    collect("profile_" + std::to_string(l),
            [l](const Snapshot& snap) { return static_cast<double>(snap.profile[l - 1]); });
  }
  if (options.keep_samples) result.samples = std::move(records);
  return result;
}

RunConfig point_config(const RunConfig& tmpl, const GridPoint& point) {
  RunConfig cfg = tmpl;
  cfg.num_qubits = point.num_qubits;
  cfg.set_parameter(point.parameter);
  std::uint64_t h = hash_combine(tmpl.seed, point.num_qubits);
  h = hash_combine(h, static_cast<std::uint64_t>(tmpl.circuit_case));
  h = hash_combine(h, std::bit_cast<std::uint64_t>(point.parameter));
  cfg.seed = h;
  return cfg;
}

std::vector<GridPoint> make_grid(std::span<const std::size_t> sizes, std::span<const double> params) {
  std::vector<GridPoint> grid;
  for (std::size_t L : sizes) {
    for (double p : params) grid.push_back({L, p});
  }
  return grid;
}

namespace {

std::string checkpoint_key(const nlohmann::json& tmpl_json, const GridPoint& p) {
  nlohmann::json k = {{"template", tmpl_json}, {"L", p.num_qubits}, {"param", p.parameter}};
  return k.dump();
}

}  // namespace

std::vector<SweepRow> sweep(const std::vector<GridPoint>& grid, const RunConfig& tmpl,
                            const SweepOptions& options) {
  if (grid.empty()) throw ValidationError("grid: sweep needs at least one point");
  const nlohmann::json tmpl_json = to_json(tmpl);

  std::vector<SweepRow> rows(grid.size());
  std::vector<bool> done(grid.size(), false);

  if (!options.checkpoint_path.empty()) {
    std::ifstream in(options.checkpoint_path);
    std::string line;
    while (in && std::getline(in, line)) {
      if (line.empty()) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception&) {
        continue;  // torn final line from an interrupted write
      }
      const std::string key = j.value("key", "");
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!done[i] && key == checkpoint_key(tmpl_json, grid[i])) {
          rows[i].point = grid[i];
          rows[i].result = ensemble_from_json(j.at("result"));
          done[i] = true;
        }
      }
    }
  }

  std::ofstream ckpt;
  if (!options.checkpoint_path.empty()) {
    ckpt.open(options.checkpoint_path, std::ios::app);
    if (!ckpt) throw RuntimeFailure("cannot open checkpoint " + options.checkpoint_path);
  }

  for (std::size_t i = 0; i < grid.size(); ++i) {
    rows[i].point = grid[i];
    if (done[i]) {
      if (options.on_point) options.on_point(i, *rows[i].result);
      continue;
    }
    try {
      RunConfig cfg = point_config(tmpl, grid[i]);
      rows[i].result = run_ensemble(cfg, {options.workers, options.keep_samples});
      if (ckpt) {
        nlohmann::json line = {{"key", checkpoint_key(tmpl_json, grid[i])},
                               {"result", to_json(*rows[i].result)}};
        ckpt << line.dump() << '\n';
        ckpt.flush();
      }
      if (options.on_point) options.on_point(i, *rows[i].result);
    } catch (const std::exception& e) {
      rows[i].error = e.what();
    }
  }

  std::unordered_set<std::uint64_t> seeds;
  for (const auto& row : rows) {
    if (!row.result) continue;
    for (std::size_t s = 0; s < row.result->config.samples; ++s) {
      if (!seeds.insert(trajectory_seed(row.result->config.seed, s)).second) {
        throw RuntimeFailure("trajectory seed collision in sweep");
      }
    }
  }
  return rows;
}

nlohmann::json to_json(const RunConfig& c) {
  return {{"L", c.num_qubits},
          {"case", to_string(c.circuit_case)},
          {"p", c.p},
          {"n", c.exponent},
          {"A_J", c.amplitude},
          {"observable", to_string(c.observables)},
          {"profile_lmax", c.profile_lmax},
          {"profile_anchor", c.profile_anchor},
          {"t_steps", c.t_steps},
          {"record_every", c.record_every},
          {"seed", c.seed},
          {"samples", c.samples},
          {"log_base", 2}};
}

RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig c;
  c.num_qubits = j.at("L").get<std::size_t>();
  c.circuit_case = parse_circuit_case(j.at("case").get<std::string>());
  c.p = j.at("p").get<double>();
  c.exponent = j.at("n").get<double>();
  c.amplitude = j.at("A_J").get<double>();
  c.observables = parse_observables(j.at("observable").get<std::string>());
  c.profile_lmax = j.at("profile_lmax").get<std::size_t>();
  c.profile_anchor = j.at("profile_anchor").get<std::size_t>();
  c.t_steps = j.at("t_steps").get<std::size_t>();
  c.record_every = j.at("record_every").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.samples = j.at("samples").get<std::size_t>();
  return c;
}

nlohmann::json to_json(const TrajectoryRecord& rec) {
  nlohmann::json snaps = nlohmann::json::array();
  for (const auto& s : rec.snapshots) {
    nlohmann::json js = {{"step", s.step}};
    if (s.purity) js["purity"] = *s.purity;
    if (s.mbn) js["mbn"] = *s.mbn;
    if (!s.profile.empty()) js["profile"] = s.profile;
    snaps.push_back(std::move(js));
  }
  return {{"sample", rec.sample},
          {"seed", rec.seed},
          {"final_rank", rec.final_rank},
          {"snapshots", std::move(snaps)}};
}

TrajectoryRecord trajectory_from_json(const nlohmann::json& j) {
  TrajectoryRecord rec;
  rec.sample = j.at("sample").get<std::size_t>();
  rec.seed = j.at("seed").get<std::uint64_t>();
  rec.final_rank = j.at("final_rank").get<std::size_t>();
  for (const auto& js : j.at("snapshots")) {
    Snapshot s;
    s.step = js.at("step").get<std::size_t>();
    if (js.contains("purity")) s.purity = js["purity"].get<std::size_t>();
    if (js.contains("mbn")) s.mbn = js["mbn"].get<std::size_t>();
    if (js.contains("profile")) s.profile = js["profile"].get<std::vector<std::size_t>>();
    rec.snapshots.push_back(std::move(s));
  }
  return rec;
}

namespace {

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

double number_from(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

nlohmann::json to_json(const EnsembleResult& r) {
  nlohmann::json obs = nlohmann::json::array();
  for (const auto& o : r.observables) {
    obs.push_back({{"name", o.name},
                   {"mean", number_or_null(o.mean)},
                   {"stderr", number_or_null(o.std_error)},
                   {"count", o.count}});
  }
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : r.samples) samples.push_back(to_json(s));
  return {{"config", to_json(r.config)}, {"observables", obs}, {"samples", samples}};
}

EnsembleResult ensemble_from_json(const nlohmann::json& j) {
  EnsembleResult r;
  r.config = run_config_from_json(j.at("config"));
  for (const auto& o : j.at("observables")) {
    r.observables.push_back({o.at("name").get<std::string>(), number_from(o.at("mean")),
                             number_from(o.at("stderr")), o.at("count").get<std::size_t>()});
  }
  for (const auto& s : j.at("samples")) r.samples.push_back(trajectory_from_json(s));
  return r;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_ensemble_csv(std::ostream& out, const nlohmann::json& config_echo,
                        const std::vector<SweepRow>& rows) {
  out << "# config: " << config_echo.dump() << '\n';
  out << "L,case,param,observable,mean,stderr,N,seed\n";
  for (const auto& row : rows) {
    if (!row.result) continue;
    const auto& c = row.result->config;
    for (const auto& o : row.result->observables) {
      out << c.num_qubits << ',' << to_string(c.circuit_case) << ',' << format_double(row.point.parameter)
          << ',' << o.name << ',' << format_double(o.mean) << ',' << format_double(o.std_error) << ','
          << o.count << ',' << c.seed << '\n';
    }
  }
}

void write_samples_jsonl(std::ostream& out, const nlohmann::json& config_echo,
                         const std::vector<SweepRow>& rows) {
  out << nlohmann::json{{"config", config_echo}}.dump() << '\n';
  for (const auto& row : rows) {
    if (!row.result) continue;
    const auto& c = row.result->config;
    for (const auto& s : row.result->samples) {
      nlohmann::json j = to_json(s);
      j["L"] = c.num_qubits;
      j["case"] = to_string(c.circuit_case);
      j["param"] = row.point.parameter;
      out << j.dump() << '\n';
    }
  }
}

}  // namespace purify
