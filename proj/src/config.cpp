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

#include "purify/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "purify/effective_hamiltonian.hpp"
#include "purify/ensemble.hpp"
#include "purify/error.hpp"

namespace purify {

namespace {

namespace pt = boost::property_tree;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& raw, const std::string& field) {
  const std::string s = trim(raw);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ValidationError(field + ": expected a number, got \"" + s + "\"");
  }
  if (used != s.size() || !std::isfinite(v)) throw ValidationError(field + ": expected a number, got \"" + s + "\"");
  return v;
}

std::uint64_t parse_unsigned(const std::string& raw, const std::string& field) {
  const std::string s = trim(raw);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ValidationError(field + ": expected a non-negative integer, got \"" + s + "\"");
  }
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ValidationError(field + ": integer out of range");
  }
}

void reject_unknown(const pt::ptree& section, const std::string& name, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : section) {
    if (!allowed.count(key)) throw ValidationError(name + "." + key + ": unknown key");
  }
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text, const std::string& field) {
  const std::string s = trim(text);
  if (s.empty()) throw ValidationError(field + ": empty list");
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw ValidationError(field + ": range must be start:stop:step");
    const double start = parse_double(parts[0], field);
    const double stop = parse_double(parts[1], field);
    const double step = parse_double(parts[2], field);
    if (!(step > 0.0) || stop < start) throw ValidationError(field + ": range needs step > 0 and stop >= start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 100000) throw ValidationError(field + ": range too long");
    for (std::size_t k = 0; k < count; ++k) {
      // Rounded so that 0.1 + 2 * 0.1 reads back as 0.3.
      out.push_back(std::round((start + static_cast<double>(k) * step) * 1e12) / 1e12);
    }
    return out;
  }
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ',');) out.push_back(parse_double(part, field));
  return out;
}

ExperimentConfig parse_config(const std::string& text, const std::string& name) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ValidationError("config: " + std::string(e.message()) + " (line " + std::to_string(e.line()) + ")");
  }
  for (const auto& [key, value] : tree) {
    if (key != "run" && key != "grid" && key != "effham") {
      throw ValidationError(key + ": unknown section or key outside a section");
    }
  }

  ExperimentConfig cfg;
  cfg.name = name;
  RunConfig& run = cfg.run;

  if (const auto sec = tree.get_child_optional("run")) {
    reject_unknown(*sec, "run",
                   {"case", "observable", "p", "n", "A_J", "samples", "seed", "t_steps", "record_every", "profile_lmax",
                    "profile_anchor", "workers", "check_invariants"});
    for (const auto& [key, node] : *sec) {
      const std::string v = node.data();
      const std::string field = "run." + key;
      if (key == "case") run.circuit_case = parse_circuit_case(trim(v));
      else if (key == "observable") run.observables = parse_observables(trim(v));
      else if (key == "p") run.p = parse_double(v, field);
      else if (key == "n") run.exponent = parse_double(v, field);
      else if (key == "A_J") run.amplitude = parse_double(v, field);
      else if (key == "samples") run.samples = parse_unsigned(v, field);
      else if (key == "seed") run.seed = parse_unsigned(v, field);
      else if (key == "t_steps") run.t_steps = parse_unsigned(v, field);
      else if (key == "record_every") run.record_every = parse_unsigned(v, field);
      else if (key == "profile_lmax") run.profile_lmax = parse_unsigned(v, field);
      else if (key == "profile_anchor") run.profile_anchor = parse_unsigned(v, field);
      else if (key == "workers") cfg.workers = parse_unsigned(v, field);
      else if (key == "check_invariants") {
        const std::string b = trim(v);
        if (b != "true" && b != "false") throw ValidationError(field + ": expected true or false");
        run.check_invariants = b == "true";
      }
    }
  }
  if (cfg.workers == 0) throw ValidationError("run.workers: must be positive");
  if (!(run.p >= 0.0 && run.p <= 1.0)) throw ValidationError("run.p: p out of [0,1]");
  if (run.samples == 0) throw ValidationError("run.samples: must be positive");

  if (const auto sec = tree.get_child_optional("grid")) {
    const std::string want = run.parameter_name();
    reject_unknown(*sec, "grid", {"L", "p", "pbar", "A_J"});
    for (const auto& [key, node] : *sec) {
      if (key == "L") {
        for (double v : parse_number_list(node.data(), "grid.L")) {
          if (v < 2 || v != std::floor(v) || static_cast<long long>(v) % 2 != 0) {
            throw ValidationError("grid.L: sizes must be even integers >= 2");
          }
          cfg.sizes.push_back(static_cast<std::size_t>(v));
        }
      } else if (key == want) {
        cfg.params = parse_number_list(node.data(), "grid." + key);
      } else {
        throw ValidationError("grid." + key + ": case " + to_string(run.circuit_case) + " sweeps " + want);
      }
    }
    if (cfg.sizes.empty()) throw ValidationError("grid.L: missing");
    if (cfg.params.empty()) throw ValidationError("grid." + want + ": missing");
    for (double v : cfg.params) {
      const std::string field = "grid." + want;
      if (want == "p" && !(v >= 0.0 && v <= 1.0)) throw ValidationError(field + ": p out of [0,1]");
      if (want == "pbar" && !(v > 0.0 && v < 1.0)) throw ValidationError(field + ": pbar out of (0,1)");
      if (want == "A_J" && !(v >= 0.0 && v <= 1.0)) throw ValidationError(field + ": A_J out of [0,1]");
    }
    for (auto l : cfg.sizes) {
      if (run.profile_lmax >= l) throw ValidationError("run.profile_lmax: must be below every grid L");
    }
    run.num_qubits = cfg.sizes.front();
    run.set_parameter(cfg.params.front());
    validate(run);
  }

  if (const auto sec = tree.get_child_optional("effham")) {
    reject_unknown(*sec, "effham", {"L", "gamma", "A_J", "dtau", "steps"});
    EffhamConfig e;
    for (const auto& [key, node] : *sec) {
      const std::string field = "effham." + key;
      if (key == "L") e.num_sites = parse_unsigned(node.data(), field);
      else if (key == "gamma") e.gammas = parse_number_list(node.data(), field);
      else if (key == "A_J") e.amplitude = parse_double(node.data(), field);
      else if (key == "dtau") e.dtau = parse_double(node.data(), field);
      else if (key == "steps") e.steps = parse_unsigned(node.data(), field);
    }
    if (e.num_sites < 2 || e.num_sites > kMaxHeffSites) {
      throw ValidationError("effham.L: must be in [2, " + std::to_string(kMaxHeffSites) + "]");
    }
    for (double g : e.gammas) {
      if (g < 0.0) throw ValidationError("effham.gamma: values must be >= 0");
    }
    if (!(e.amplitude >= 0.0 && e.amplitude <= 1.0)) throw ValidationError("effham.A_J: A_J out of [0,1]");
    if (!(e.dtau > 0.0)) throw ValidationError("effham.dtau: must be positive");
    cfg.effham = e;
  }
  if (!tree.get_child_optional("grid") && !cfg.effham) throw ValidationError("config: needs a [grid] or [effham] section");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::filesystem::path(path).stem().string());
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json j = {{"name", cfg.name}, {"run", to_json(cfg.run)}};
  if (!cfg.sizes.empty()) {
    j["grid"] = {{"L", cfg.sizes}, {cfg.run.parameter_name(), cfg.params}};
  }
  if (cfg.effham) {
    j["effham"] = {{"L", cfg.effham->num_sites},
                   {"gamma", cfg.effham->gammas},
                   {"A_J", cfg.effham->amplitude},
                   {"dtau", cfg.effham->dtau},
                   {"steps", cfg.effham->steps}};
  }
  return j;
}

}  // namespace purify
