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

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "purify/circuit.hpp"
#include "purify/scaling.hpp"

namespace purify {

/// Process exit codes shared by the pipelines and the command line.
enum ExitCode : int { kExitOk = 0, kExitValidation = 2, kExitFlagged = 3, kExitRuntime = 4 };

std::string tool_version();

struct SimulateOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<ObservableSelection> observable;
  std::optional<std::size_t> profile_anchor;
};

/// Writes ensemble.csv, samples.jsonl and manifest.json into out_dir.
int cmd_simulate(const SimulateOptions& options, std::ostream& log);

struct FitInput {
  std::string csv_path;
  std::string observable;
  std::string out_dir = ".";
};

/// Writes collapse_report.json and collapsed.csv. Flagged fits exit 3.
int cmd_collapse(const FitInput& input, const CollapseGuess& guess, std::ostream& log);
/// Fits y = a L^b over the rows at one parameter value.
int cmd_fit_powerlaw(const FitInput& input, double parameter, std::ostream& log);
int cmd_fit_purity(const FitInput& input, std::ostream& log);

struct EffhamOptions {
  std::size_t num_sites = 8;
  std::vector<double> gammas{0.0};
  double amplitude = 0.0;
  double dtau = 0.1;
  std::size_t steps = 2000;
  bool print_coefficients = false;
  std::string out_dir = ".";
};

/// Writes effham.csv: gamma, E0, E1, gap, degenerate, <X_j>, overlap of the
/// imaginary-time state with the ground space.
int cmd_effham(const EffhamOptions& options, std::ostream& log);

int cmd_selftest(std::ostream& log);

/// Rows of one observable from an ensemble CSV.
ScalingDataset read_scaling_csv(const std::string& path, const std::string& observable);

std::string sha256_file(const std::string& path);
/// Writes via a temporary file in the same directory and renames over path.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace purify
