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

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "purify/pauli.hpp"
#include "purify/rng.hpp"

namespace purify {

/// 4x4 symplectic matrix over GF(2). Row k is the image of the k-th basis
/// Pauli in the order (X_0, Z_0, X_1, Z_1); bit j of a row is component j in
/// the same interleaved order.
using Symplectic4 = std::array<std::uint8_t, 4>;

inline constexpr std::size_t kSymplecticCount = 720;
inline constexpr std::size_t kTwoQubitCliffordCount = kSymplecticCount * 16;

/// Index-to-element bijection [0, 720) -> Sp(4, GF(2)) built from
/// symplectic transvections.
Symplectic4 symplectic_from_index(std::size_t index);

/// Symplectic form of two interleaved 4-bit vectors.
int symplectic_form4(std::uint8_t u, std::uint8_t v);
bool is_symplectic(const Symplectic4& s);

/// Two-qubit Clifford modulo global phase: signed images of X_0, Z_0, X_1,
/// Z_1 plus a 16-entry conjugation table over local Pauli patterns.
class TwoQubitClifford {
 public:
  TwoQubitClifford() : TwoQubitClifford(Symplectic4{1, 2, 4, 8}, 0) {}
  /// sign bit k negates the image of basis Pauli k.
  TwoQubitClifford(const Symplectic4& s, std::uint8_t signs);

  /// Throws ValidationError unless the images are Hermitian two-qubit
  /// strings obeying the canonical commutation relations.
  static TwoQubitClifford from_images(const std::array<PauliString, 4>& images);
  static TwoQubitClifford cnot();

  const Symplectic4& symplectic() const { return sym_; }
  std::uint8_t signs() const { return signs_; }
  PauliString image(std::size_t k) const;

  /// Conjugates a two-qubit Pauli string: g P g^dagger.
  PauliString conjugate(const PauliString& p) const;

  /// Lookup entry for local pattern (x_a | z_a<<1 | x_b<<2 | z_b<<3): low
  /// nibble is the image pattern, bit 4 set when the image carries a minus
  /// sign.
  std::uint8_t lookup(unsigned pattern) const { return lut_[pattern]; }

  friend bool operator==(const TwoQubitClifford& a, const TwoQubitClifford& b) {
    return a.sym_ == b.sym_ && a.signs_ == b.signs_;
  }

 private:
  Symplectic4 sym_;
  std::uint8_t signs_;
  std::array<std::uint8_t, 16> lut_{};
};

/// List-up table of all 11 520 phase-quotient two-qubit Cliffords. Built
/// once; read-only afterwards.
class CliffordTable {
 public:
  static const CliffordTable& instance();

  std::size_t size() const { return gates_.size(); }
  const TwoQubitClifford& operator[](std::size_t i) const { return gates_[i]; }
  std::size_t identity_symplectic_index() const { return identity_index_; }

  std::size_t sample_index(Rng& rng) const { return rng.below(gates_.size()); }
  const TwoQubitClifford& sample(Rng& rng) const { return gates_[sample_index(rng)]; }

 private:
  CliffordTable();
  std::vector<TwoQubitClifford> gates_;
  std::size_t identity_index_ = 0;
};

}  // namespace purify
