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

#include "purify/circuit.hpp"

#include <cmath>
#include <numbers>

#include "purify/error.hpp"
#include "purify/observables.hpp"

namespace purify {

std::string to_string(CircuitCase c) {
  switch (c) {
    case CircuitCase::I: return "I";
    case CircuitCase::II: return "II";
    case CircuitCase::III: return "III";
  }
  return "?";
}

CircuitCase parse_circuit_case(const std::string& s) {
  if (s == "I" || s == "1") return CircuitCase::I;
  if (s == "II" || s == "2") return CircuitCase::II;
  if (s == "III" || s == "3") return CircuitCase::III;
  throw ValidationError("run.case: expected I, II or III, got \"" + s + "\"");
}

std::string to_string(ObservableSelection o) {
  switch (o) {
    case ObservableSelection::Purity: return "purity";
    case ObservableSelection::Mbn: return "mbn";
    case ObservableSelection::Both: return "both";
  }
  return "?";
}

ObservableSelection parse_observables(const std::string& s) {
  if (s == "purity") return ObservableSelection::Purity;
  if (s == "mbn") return ObservableSelection::Mbn;
  if (s == "both") return ObservableSelection::Both;
  throw ValidationError("run.observable: expected purity, mbn or both, got \"" + s + "\"");
}

MeasurementProfile uniform_profile(std::size_t num_qubits, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("p out of [0,1]");
  return {std::vector<double>(num_qubits, p), MeasurementProfile::Provenance::Uniform, p};
}

MeasurementProfile power_random_profile(std::size_t num_qubits, double n, Rng& rng) {
  if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("exponent n must be positive");
  MeasurementProfile mp{std::vector<double>(num_qubits), MeasurementProfile::Provenance::PowerRandom,
                        n};
  for (auto& p : mp.p) p = std::pow(rng.uniform(), n);
  return mp;
}

GateProfile build_gate_profile(double amplitude, std::size_t num_qubits) {
  if (!(amplitude >= 0.0 && amplitude <= 1.0)) throw ValidationError("A_J out of [0,1]");
  GateProfile gp{amplitude, std::vector<double>(num_qubits)};
  for (std::size_t j = 0; j < num_qubits; ++j) {
    gp.p[j] = (1.0 + amplitude * std::cos(2.0 * std::numbers::pi * kGoldenRatio *
                                          static_cast<double>(j))) /
              (1.0 + amplitude);
  }
  return gp;
}

double RunConfig::parameter() const {
  switch (circuit_case) {
    case CircuitCase::I: return p;
    case CircuitCase::II: return 1.0 / (exponent + 1.0);
    case CircuitCase::III: return amplitude;
  }
  return p;
}

std::string RunConfig::parameter_name() const {
  switch (circuit_case) {
    case CircuitCase::I: return "p";
    case CircuitCase::II: return "pbar";
    case CircuitCase::III: return "A_J";
  }
  return "p";
}

void RunConfig::set_parameter(double value) {
  switch (circuit_case) {
    case CircuitCase::I: p = value; break;
    case CircuitCase::II:
      if (!(value > 0.0 && value < 1.0)) throw ValidationError("grid.pbar out of (0,1)");
      exponent = 1.0 / value - 1.0;
      break;
    case CircuitCase::III: amplitude = value; break;
  }
}

std::size_t RunConfig::resolved_t_steps() const {
  if (t_steps > 0) return t_steps;
  if (!records_mbn() && profile_lmax == 0) return 4 * num_qubits;
  return (num_qubits * num_qubits + 3) / 4;
}

void validate(const RunConfig& cfg) {
  if (cfg.num_qubits < 2 || cfg.num_qubits % 2 != 0) {
    throw ValidationError("run.L: must be even and >= 2, got " + std::to_string(cfg.num_qubits));
  }
  if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw ValidationError("run.p: p out of [0,1]");
  if (cfg.circuit_case == CircuitCase::II && !(cfg.exponent > 0.0 && std::isfinite(cfg.exponent))) {
    throw ValidationError("run.n: exponent must be positive");
  }
  if (!(cfg.amplitude >= 0.0 && cfg.amplitude <= 1.0)) {
    throw ValidationError("run.A_J: A_J out of [0,1]");
  }
  if (cfg.profile_lmax >= cfg.num_qubits) {
    throw ValidationError("run.profile_lmax: must be below L");
  }
  if (cfg.samples == 0) throw ValidationError("run.samples: must be positive");
}

std::uint64_t trajectory_seed(std::uint64_t master, std::size_t sample) {
  return hash_combine(master, static_cast<std::uint64_t>(sample));
}

void step(MixedTableau& t, std::size_t time, const MeasurementProfile& mp, const GateProfile* gp,
          const CliffordTable& table, Rng& rng) {
  const std::size_t n = t.num_qubits();
  for (std::size_t j = (time % 2 == 0) ? 1 : 0; j < n; j += 2) {
    if (gp != nullptr && !rng.bernoulli(gp->p[j])) continue;
    t.apply(table.sample(rng), j, (j + 1) % n);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.bernoulli(mp.p[i])) t.measure_z(i, rng);
  }
}

namespace {

Snapshot take_snapshot(const MixedTableau& t, const RunConfig& cfg, std::size_t time) {
  Snapshot s;
  s.step = time;
  if (cfg.records_purity()) s.purity = log_purity(t);
  if (cfg.records_mbn()) s.mbn = negativity(t, Region::half_chain(t.num_qubits()));
  if (cfg.profile_lmax > 0) s.profile = negativity_profile(t, cfg.profile_lmax, cfg.profile_anchor);
  return s;
}

}  // namespace

TrajectoryRecord run_trajectory(const RunConfig& cfg, std::size_t sample) {
  validate(cfg);
  const CliffordTable& table = CliffordTable::instance();
  TrajectoryRecord rec;
  rec.seed = trajectory_seed(cfg.seed, sample);
  rec.sample = sample;
  Rng rng(rec.seed);

  const std::size_t n = cfg.num_qubits;
  const MeasurementProfile mp = cfg.circuit_case == CircuitCase::II
                                    ? power_random_profile(n, cfg.exponent, rng)
                                    : uniform_profile(n, cfg.p);
  std::optional<GateProfile> gp;
  if (cfg.circuit_case == CircuitCase::III) gp = build_gate_profile(cfg.amplitude, n);

  MixedTableau t = MixedTableau::maximally_mixed(n);
  const std::size_t steps = cfg.resolved_t_steps();
  std::size_t last_rank = 0;
  for (std::size_t time = 0; time < steps; ++time) {
    step(t, time, mp, gp ? &*gp : nullptr, table, rng);
    const std::size_t done = time + 1;
    if (cfg.check_invariants) {
      t.check_invariants();
      if (t.num_generators() < last_rank) throw RuntimeFailure("generator count decreased");
      last_rank = t.num_generators();
    }
    if (done == steps || (cfg.record_every > 0 && done % cfg.record_every == 0)) {
      rec.snapshots.push_back(take_snapshot(t, cfg, done));
      if (cfg.check_invariants && rec.snapshots.size() > 1) {
        const auto& prev = rec.snapshots[rec.snapshots.size() - 2];
        const auto& cur = rec.snapshots.back();
        if (prev.purity && cur.purity && *cur.purity > *prev.purity) {
          throw RuntimeFailure("logarithmic purity increased along a trajectory");
        }
      }
    }
  }
  rec.final_rank = t.num_generators();
  return rec;
}

}  // namespace purify
