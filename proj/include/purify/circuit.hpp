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
#include <optional>
#include <string>
#include <vector>

#include "purify/clifford.hpp"
#include "purify/rng.hpp"
#include "purify/tableau.hpp"

namespace purify {

/// I: uniform measurement probability p. II: quenched p_i = w_i^n with
/// w_i ~ U[0,1). III: uniform p with quasi-periodic gate probabilities.
enum class CircuitCase { I, II, III };

std::string to_string(CircuitCase c);
CircuitCase parse_circuit_case(const std::string& s);

enum class ObservableSelection { Purity, Mbn, Both };

std::string to_string(ObservableSelection o);
ObservableSelection parse_observables(const std::string& s);

struct MeasurementProfile {
  enum class Provenance { Uniform, PowerRandom };
  std::vector<double> p;
  Provenance provenance = Provenance::Uniform;
  double parameter = 0.0;  // p for Uniform, n for PowerRandom
};

MeasurementProfile uniform_profile(std::size_t num_qubits, double p);
/// Fresh w_i draws from rng; p_i = w_i^n, mean 1/(n+1).
MeasurementProfile power_random_profile(std::size_t num_qubits, double n, Rng& rng);

/// Per-link gate probabilities (1 + A cos(2 pi Q j)) / (1 + A), Q the golden
/// ratio; link j joins sites j and j+1 (mod L).
struct GateProfile {
  double amplitude = 0.0;
  std::vector<double> p;
};

inline constexpr double kGoldenRatio = 1.6180339887498948482;

GateProfile build_gate_profile(double amplitude, std::size_t num_qubits);

struct RunConfig {
  std::size_t num_qubits = 16;
  CircuitCase circuit_case = CircuitCase::I;
  double p = 0.1;          // measurement probability, Cases I and III
  double exponent = 1.0;   // n of Case II
  double amplitude = 0.0;  // A_J of Case III
  ObservableSelection observables = ObservableSelection::Both;
  std::size_t profile_lmax = 0;  // 0 disables E_l profiles
  std::size_t profile_anchor = 0;
  std::size_t t_steps = 0;       // 0 selects the saturation default
  std::size_t record_every = 0;  // 0 records the final step only
  std::uint64_t seed = 1;
  std::size_t samples = 100;
  bool check_invariants = false;

  /// Sweep coordinate: p (I), mean probability 1/(n+1) (II), A_J (III).
  double parameter() const;
  std::string parameter_name() const;
  void set_parameter(double value);
  bool records_purity() const { return observables != ObservableSelection::Mbn; }
  bool records_mbn() const { return observables != ObservableSelection::Purity; }
  /// 4L when only purity is recorded, ceil(L^2 / 4) otherwise.
  std::size_t resolved_t_steps() const;
};

/// Throws ValidationError naming the offending field, e.g. "run.p".
void validate(const RunConfig& cfg);

struct Snapshot {
  std::size_t step = 0;
  std::optional<std::size_t> purity;
  std::optional<std::size_t> mbn;
  std::vector<std::size_t> profile;
  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

struct TrajectoryRecord {
  std::uint64_t seed = 0;
  std::size_t sample = 0;
  std::size_t final_rank = 0;
  std::vector<Snapshot> snapshots;  // last entry is t = t_steps
  friend bool operator==(const TrajectoryRecord&, const TrajectoryRecord&) = default;
};

std::uint64_t trajectory_seed(std::uint64_t master, std::size_t sample);

/// One time step t: a unitary layer on odd links (t even) or even links
/// (t odd), then Z measurements in ascending site order.
void step(MixedTableau& t, std::size_t time, const MeasurementProfile& mp, const GateProfile* gp,
          const CliffordTable& table, Rng& rng);

/// Deterministic in (cfg.seed, sample).
TrajectoryRecord run_trajectory(const RunConfig& cfg, std::size_t sample);

}  // namespace purify
