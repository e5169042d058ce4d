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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "purify/circuit.hpp"

namespace purify {

struct EffhamConfig {
  std::size_t num_sites = 8;
  std::vector<double> gammas{0.0};
  double amplitude = 0.0;  // A_J of the coupling modulation
  double dtau = 0.1;
  std::size_t steps = 2000;
};

/// Parsed experiment file. Sections:
///   [run]    case, observable, p, samples, seed, t_steps, record_every,
///            profile_lmax, profile_anchor, workers
///   [grid]   L = list; one of p / pbar / A_J = list or start:stop:step
///   [effham] L, gamma, A_J, dtau, steps
struct ExperimentConfig {
  std::string name;
  RunConfig run;
  std::vector<std::size_t> sizes;
  std::vector<double> params;
  std::size_t workers = 1;
  std::optional<EffhamConfig> effham;
};

/// Comma-separated numbers or an inclusive start:stop:step range.
std::vector<double> parse_number_list(const std::string& text, const std::string& field);

ExperimentConfig parse_config(const std::string& text, const std::string& name = "");
ExperimentConfig load_config(const std::string& path);

nlohmann::json to_json(const ExperimentConfig& cfg);

}  // namespace purify
