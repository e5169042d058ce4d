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

#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "purify/purify.h"

int main(int argc, char** argv) {
  CLI::App app{"Measurement-induced purification in random Clifford circuits"};
  app.set_version_flag("--version", std::string(purify_version()));
  app.require_subcommand(1);

  std::string config, out_dir = ".", observable, input;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers, anchor;

  auto* sim = app.add_subcommand("simulate", "Run an ensemble sweep from a config file");
  sim->add_option("--config", config, "Experiment config (INI)")->required()->check(CLI::ExistingFile);
  sim->add_option("--seed", seed, "Override the master seed");
  sim->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  sim->add_option("--out-dir", out_dir, "Output directory");
  sim->add_option("--observable", observable, "purity, mbn or both")
      ->check(CLI::IsMember({"purity", "mbn", "both"}));
  sim->add_option("--profile-anchor", anchor, "Left site of the E_l profile windows");

  double pc = 0.16, nu = 1.5, zeta = 0.0;
  auto* col = app.add_subcommand("collapse", "Finite-size collapse of an ensemble CSV");
  col->add_option("--input", input, "Ensemble CSV")->required()->check(CLI::ExistingFile);
  col->add_option("--observable", observable, "Observable column (default mbn)");
  col->add_option("--out-dir", out_dir, "Output directory");
  col->add_option("--pc", pc, "Initial p_c");
  col->add_option("--nu", nu, "Initial nu");
  col->add_option("--zeta", zeta, "Initial zeta");

  double parameter = 0.1;
  auto* pow = app.add_subcommand("fit-powerlaw", "Fit a L^b at one sweep parameter");
  pow->add_option("--input", input, "Ensemble CSV")->required()->check(CLI::ExistingFile);
  pow->add_option("--param", parameter, "Sweep parameter value to select")->required();
  pow->add_option("--observable", observable, "Observable column (default mbn)");
  pow->add_option("--out-dir", out_dir, "Output directory");

  auto* pur = app.add_subcommand("fit-purity", "Fit alpha (p_c - p)^nu to the largest size");
  pur->add_option("--input", input, "Ensemble CSV")->required()->check(CLI::ExistingFile);
  pur->add_option("--observable", observable, "Observable column (default purity)");
  pur->add_option("--out-dir", out_dir, "Output directory");

  purify_effham_options eh;
  purify_effham_defaults(&eh);
  std::vector<double> gammas{0.0};
  bool coefficients = false;
  auto* eff = app.add_subcommand("effham", "Effective-Hamiltonian spectra over a gamma sweep");
  auto* eff_config = eff->add_option("--config", config, "Config with an [effham] section")->check(CLI::ExistingFile);
  eff->add_option("-L,--sites", eh.num_sites, "Chain length (at most 12)")->excludes(eff_config);
  eff->add_option("--gamma", gammas, "Uniform field values")->delimiter(',')->excludes(eff_config);
  eff->add_option("--amplitude,--A_J", eh.amplitude, "Coupling modulation amplitude")->excludes(eff_config);
  eff->add_option("--dtau", eh.dtau, "Imaginary-time step")->excludes(eff_config);
  eff->add_option("--steps", eh.steps, "Imaginary-time steps")->excludes(eff_config);
  eff->add_flag("--coefficients", coefficients, "Print the two-site coefficient reduction");
  eff->add_option("--out-dir", out_dir, "Output directory");

  auto* self = app.add_subcommand("selftest", "Quick internal consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(PURIFY_ERR_VALIDATION);
  }

  const auto opt = [](const std::string& s) { return s.empty() ? nullptr : s.c_str(); };

  if (*sim) {
    purify_simulate_options o{};
    o.config_path = config.c_str();
    o.out_dir = out_dir.c_str();
    o.has_seed = seed.has_value();
    o.seed = seed.value_or(0);
    o.workers = workers.value_or(0);
    o.observable = opt(observable);
    o.has_profile_anchor = anchor.has_value();
    o.profile_anchor = anchor.value_or(0);
    return static_cast<int>(purify_simulate(&o));
  }
  if (*col) return static_cast<int>(purify_collapse(input.c_str(), opt(observable), out_dir.c_str(), pc, nu, zeta));
  if (*pow) return static_cast<int>(purify_fit_powerlaw(input.c_str(), opt(observable), out_dir.c_str(), parameter));
  if (*pur) return static_cast<int>(purify_fit_purity(input.c_str(), opt(observable), out_dir.c_str()));
  if (*eff) {
    if (!config.empty()) return static_cast<int>(purify_effham_config(config.c_str(), out_dir.c_str(), coefficients ? 1 : 0));
    eh.gammas = gammas.data();
    eh.num_gammas = gammas.size();
    eh.print_coefficients = coefficients ? 1 : 0;
    eh.out_dir = out_dir.c_str();
    return static_cast<int>(purify_effham(&eh));
  }
  if (*self) return static_cast<int>(purify_selftest());
  return static_cast<int>(PURIFY_ERR_VALIDATION);
}
