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
#include <span>
#include <string>
#include <vector>

namespace purify {

struct ScalingRow {
  std::size_t size = 0;  // L
  double p = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
};

/// Rows of one observable, grouped by size with p strictly increasing.
class ScalingDataset {
 public:
  ScalingDataset() = default;
  explicit ScalingDataset(std::vector<ScalingRow> rows);

  const std::vector<ScalingRow>& rows() const { return rows_; }
  std::vector<std::size_t> sizes() const;
  std::vector<ScalingRow> rows_for(std::size_t size) const;
  bool empty() const { return rows_.empty(); }

 private:
  std::vector<ScalingRow> rows_;  // sorted by (size, p)
};

struct PowerLawFit {
  double amplitude = 0.0;  // a
  double exponent = 0.0;   // b
  double amplitude_error = 0.0;
  double exponent_error = 0.0;
  std::size_t points = 0;
};

/// y = a L^b by ordinary least squares on (log L, log y).
PowerLawFit powerlaw_fit(std::span<const double> sizes, std::span<const double> values);

struct PurityFit {
  double amplitude = 0.0;  // alpha
  double p_c = 0.0;
  double nu = 0.0;
  double amplitude_error = 0.0;
  double p_c_error = 0.0;
  double nu_error = 0.0;
  double reduced_chi2 = 0.0;
  std::size_t size = 0;
  std::size_t points_used = 0;
  bool flagged = false;
  std::string flag_reason;
};

/// Fits mean/L ~ alpha (p_c - p)^nu over the largest size with p <= p_c.
PurityFit purity_transition_fit(const ScalingDataset& data);

/// Houdayer-Hartmann quality of the collapse
/// x = L^{1/nu}(p - p_c), y = L^{-zeta/nu}(mean - mean(p_c)).
double collapse_quality(const ScalingDataset& data, double p_c, double nu, double zeta);

struct CollapseGuess {
  double p_c = 0.16;
  double nu = 1.5;
  double zeta = 0.0;
};

struct CollapseResult {
  double p_c = 0.0;
  double nu = 0.0;
  double zeta = 0.0;
  double p_c_error = 0.0;
  double nu_error = 0.0;
  double zeta_error = 0.0;
  double quality = 0.0;  // S_min
  std::size_t evaluations = 0;
  bool flagged = false;
  std::string flag_reason;
};

CollapseResult collapse(const ScalingDataset& data, const CollapseGuess& guess = {});

struct CollapsedPoint {
  double x = 0.0;
  double y = 0.0;
  double dy = 0.0;
  std::size_t size = 0;
};

/// Sizes whose p-grid does not cover p_c are omitted.
std::vector<CollapsedPoint> collapsed_coordinates(const ScalingDataset& data, double p_c, double nu, double zeta);

}  // namespace purify
