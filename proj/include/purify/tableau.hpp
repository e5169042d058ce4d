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
#include <string_view>
#include <vector>

#include "purify/clifford.hpp"
#include "purify/pauli.hpp"
#include "purify/rng.hpp"

namespace purify {

enum class MeasurementKind { RandomExisting, Deterministic, Purifying };

struct MeasurementOutcome {
  int value = 1;  // +1 or -1
  MeasurementKind kind = MeasurementKind::Deterministic;
  bool purified = false;
};

/// Mixed stabilizer state rho = 2^-L prod_k (1 + g_k) given by m <= L
/// commuting, independent, Hermitian generators. No destabilizers are kept;
/// membership queries go through a lazily rebuilt reduced row echelon form.
class MixedTableau {
 public:
  /// Infinite-temperature state on L qubits. L must be even and >= 2.
  static MixedTableau maximally_mixed(std::size_t num_qubits);
  /// Validates every invariant; throws ValidationError on violation.
  static MixedTableau from_generators(std::size_t num_qubits,
                                      const std::vector<PauliString>& generators);
  /// One signed Pauli string per line, optionally preceded by "L=<n>".
  static MixedTableau from_text(std::string_view text);

  std::size_t num_qubits() const { return n_; }
  std::size_t num_generators() const { return phases_.size(); }

  PauliString generator(std::size_t k) const;
  std::vector<PauliString> generators() const;

  /// Rows of the reduced row echelon form (same group, canonical basis).
  std::vector<PauliString> canonical_generators() const;

  /// Replaces every generator P by g P g^dagger, with g acting on (a, b).
  void apply(const TwoQubitClifford& gate, std::size_t a, std::size_t b);

  /// Projective Z_i measurement with outcome +-1 drawn from rng when random.
  MeasurementOutcome measure_z(std::size_t site, Rng& rng);
  /// Same as measure_z but with the random sign supplied by the caller.
  MeasurementOutcome measure_z_with(std::size_t site, int forced_sign);

  /// Sign s with s * P (phase stripped) in the stabilizer group, if any.
  std::optional<int> contains_up_to_sign(const PauliString& p) const;

  /// Throws RuntimeFailure describing the first violated invariant.
  void check_invariants() const;

  std::string to_text() const;

  /// Direct access to packed row k: (x words | z words).
  const std::uint64_t* row_data(std::size_t k) const { return bits_.data() + k * stride_; }
  std::size_t words_per_half() const { return words_; }

 private:
  explicit MixedTableau(std::size_t n);

  std::uint64_t* row(std::size_t k) { return bits_.data() + k * stride_; }
  const std::uint64_t* row(std::size_t k) const { return bits_.data() + k * stride_; }
  void append_row(const PauliString& p);
  void build_canonical() const;

  std::size_t n_;
  std::size_t words_;
  std::size_t stride_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint8_t> phases_;

  struct Canonical {
    bool valid = false;
    std::vector<std::uint64_t> bits;
    std::vector<std::uint8_t> phases;
    std::vector<std::size_t> pivots;  // column in [0, 2n)
  };
  mutable Canonical canon_;
};

}  // namespace purify
