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
#include <vector>

#include <Eigen/Dense>

namespace purify {

inline constexpr std::size_t kMaxHeffSites = 12;

/// Chain of L sites with periodic links j -> j+1 (mod L), J_j scaling the
/// two-body terms on link j and gamma_j the extra transverse field on site j.
struct HeffSpec {
  std::size_t num_sites = 0;
  std::vector<double> coupling;
  std::vector<double> gamma;

  /// Uniform gamma; couplings follow the quasi-periodic gate profile of
  /// amplitude A_J (all ones at A_J = 0).
  static HeffSpec uniform(std::size_t num_sites, double gamma, double amplitude = 0.0);
  void validate() const;
};

/// Site j is bit j of the basis index, with Z|up> = +|up> for bit 0.
///   H = sum_j J_j (-2/5 Z_j Z_{j+1} - 1/10 Y_j Y_{j+1}) - sum_j (2/5 + 2 gamma_j) X_j
Eigen::MatrixXd build_heff(const HeffSpec& spec);

struct PairCoefficients {
  // Two-site Pauli expansion of <<ab| u |cd>> as written.
  double raw_zz = 0.0;
  double raw_yy = 0.0;
  double raw_x_left = 0.0;
  double raw_x_right = 0.0;
  // Same operator after conjugating the right site by X.
  double zz = 0.0;
  double yy = 0.0;
  double x = 0.0;  // per site; left and right agree
  double identity = 0.0;
  double max_other = 0.0;  // largest remaining Pauli coefficient
};

/// Expands the averaged two-site gate built from the |I>>, |C>> vectors.
PairCoefficients verify_hnn_coefficients();

/// prod_j (c+ |up> + c- |down>), c+- = (sqrt 3 +- 1) / sqrt 2. Not normalized.
Eigen::VectorXd identity_supervector(std::size_t num_sites);

struct GroundState {
  double energy = 0.0;
  double first_excited = 0.0;
  double gap = 0.0;
  Eigen::VectorXd vector;
  bool degenerate = false;
  Eigen::MatrixXd space;  // orthonormal columns spanning the ground space
};

GroundState ground_state(const Eigen::MatrixXd& h, double degeneracy_tolerance = 1e-9);

struct ImaginaryTimeResult {
  std::vector<double> energies;  // <H> after each step, index 0 = initial
  std::vector<Eigen::VectorXd> snapshots;
  Eigen::VectorXd final_state;  // normalized
  double ground_overlap = 0.0;  // |<gs|v0>| / |v0|
  bool zero_overlap = false;
};

/// Normalized iterates of exp(-dtau H) v0, using exact eigenvectors of H.
/// Requires dtau < 1 / ||H||.
ImaginaryTimeResult imaginary_time_evolve(const Eigen::MatrixXd& h, const Eigen::VectorXd& v0, double dtau,
                                          std::size_t steps, std::size_t record_every = 0);

/// <X_j> for each site of a normalized state.
std::vector<double> x_magnetization(const Eigen::VectorXd& state, std::size_t num_sites);

struct EffhamRow {
  double gamma = 0.0;
  double energy = 0.0;
  double first_excited = 0.0;
  double gap = 0.0;
  bool degenerate = false;
  std::vector<double> magnetization;  // in the ground space projection of the identity supervector
};

std::vector<EffhamRow> gamma_sweep(std::size_t num_sites, const std::vector<double>& gammas, double amplitude = 0.0);

}  // namespace purify
