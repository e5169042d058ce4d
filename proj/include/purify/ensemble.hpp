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
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "purify/circuit.hpp"

namespace purify {

struct ObservableSummary {
  std::string name;  // "purity", "mbn", "profile_<l>"
  double mean = 0.0;
  double std_error = 0.0;  // NaN when count < 2
  std::size_t count = 0;
  friend bool operator==(const ObservableSummary&, const ObservableSummary&) = default;
};

struct EnsembleResult {
  RunConfig config;
  std::vector<ObservableSummary> observables;
  std::vector<TrajectoryRecord> samples;  // filled when requested

  const ObservableSummary* find(const std::string& name) const;
};

struct EnsembleOptions {
  std::size_t workers = 1;
  bool keep_samples = false;
};

/// Sum of values in index order by recursive halving.
double pairwise_sum(std::span<const double> values);

/// Mean and standard error of the mean (sample stddev / sqrt(N)).
ObservableSummary summarize(std::string name, std::span<const double> values);

/// Final-time means over cfg.samples trajectories. The result does not
/// depend on the worker count.
EnsembleResult run_ensemble(const RunConfig& cfg, const EnsembleOptions& options = {});

struct GridPoint {
  std::size_t num_qubits = 0;
  double parameter = 0.0;
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// Point config: template with L and the sweep parameter replaced and the
/// seed re-derived from (template seed, L, case, parameter).
RunConfig point_config(const RunConfig& tmpl, const GridPoint& point);

struct SweepOptions {
  std::size_t workers = 1;
  bool keep_samples = false;
  /// JSONL checkpoint: completed points are appended and skipped on resume.
  std::string checkpoint_path;
  std::function<void(std::size_t index, const EnsembleResult&)> on_point;
};

struct SweepRow {
  GridPoint point;
  std::optional<EnsembleResult> result;
  std::string error;
};

/// Cartesian grid helper: sizes x parameters, sizes outermost.
std::vector<GridPoint> make_grid(std::span<const std::size_t> sizes, std::span<const double> params);

/// Runs every grid point; a failing point is reported in its row and does
/// not stop the others. Throws if two trajectories share a seed.
std::vector<SweepRow> sweep(const std::vector<GridPoint>& grid, const RunConfig& tmpl,
                            const SweepOptions& options = {});

nlohmann::json to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TrajectoryRecord& rec);
TrajectoryRecord trajectory_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EnsembleResult& r);
EnsembleResult ensemble_from_json(const nlohmann::json& j);

/// "# config: {...}" header, then L,case,param,observable,mean,stderr,N,seed.
void write_ensemble_csv(std::ostream& out, const nlohmann::json& config_echo,
                        const std::vector<SweepRow>& rows);
/// Header line {"config": ...}, then one object per trajectory.
void write_samples_jsonl(std::ostream& out, const nlohmann::json& config_echo,
                         const std::vector<SweepRow>& rows);

/// Round-trip-exact decimal form used in every output file.
std::string format_double(double v);

}  // namespace purify
