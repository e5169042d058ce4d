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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "purify/gf2.hpp"

namespace purify {

/// Pauli string in binary symplectic form. The represented operator is
/// i^phase * P_0 (x) P_1 (x) ... with P_q = I, X, Z, Y for (x_q, z_q) =
/// (0,0), (1,0), (0,1), (1,1). Under this convention a string is Hermitian
/// exactly when phase is 0 or 2.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n) : n_(n), x_(words_for(n), 0), z_(words_for(n), 0) {}

  /// Parses "+XIZY", "-ZZ", "+iXY", "-iY"; a missing sign means "+".
  static PauliString from_string(std::string_view text);
  static PauliString single(std::size_t n, std::size_t q, char pauli);

  std::size_t size() const { return n_; }
  bool x(std::size_t q) const { return (x_[q / 64] >> (q % 64)) & 1u; }
  bool z(std::size_t q) const { return (z_[q / 64] >> (q % 64)) & 1u; }
  void set(std::size_t q, bool x, bool z);
  /// Single-qubit label 'I', 'X', 'Y' or 'Z'.
  char at(std::size_t q) const;

  int phase() const { return phase_; }
  void set_phase(int phase) { phase_ = ((phase % 4) + 4) % 4; }
  bool is_hermitian() const { return (phase_ & 1) == 0; }
  bool is_identity() const;
  std::size_t weight() const;

  std::span<const std::uint64_t> x_words() const { return x_; }
  std::span<const std::uint64_t> z_words() const { return z_; }
  std::span<std::uint64_t> x_words() { return x_; }
  std::span<std::uint64_t> z_words() { return z_; }

  std::string to_string() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
  int phase_ = 0;
};

/// Sorted, duplicate-free qubit index set.
class Region {
 public:
  Region() = default;
  /// Validates and sorts; throws ValidationError on duplicates or indices >= n.
  Region(std::vector<std::size_t> sites, std::size_t n);

  /// Sites [first, first + length) wrapped modulo n.
  static Region window(std::size_t first, std::size_t length, std::size_t n);
  static Region half_chain(std::size_t n) { return window(0, n / 2, n); }

  std::size_t size() const { return sites_.size(); }
  bool empty() const { return sites_.empty(); }
  std::size_t qubits() const { return n_; }
  const std::vector<std::size_t>& sites() const { return sites_; }
  Region complement() const;

 private:
  std::vector<std::size_t> sites_;
  std::size_t n_ = 0;
};

namespace pauli_kernels {

inline int popcount_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  int c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

/// Symplectic product of (x1|z1) and (x2|z2): 0 if they commute.
inline int symplectic(const std::uint64_t* x1, const std::uint64_t* z1, const std::uint64_t* x2,
                      const std::uint64_t* z2, std::size_t words) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words; ++i) acc ^= (x1[i] & z2[i]) ^ (z1[i] & x2[i]);
  return std::popcount(acc) & 1;
}

/// In-place left multiplication target <- target * other, returning the new
/// phase. Both operands use the Hermitian-basis convention.
inline int multiply_into(std::uint64_t* tx, std::uint64_t* tz, int tphase, const std::uint64_t* ox,
                         const std::uint64_t* oz, int ophase, std::size_t words) {
  int acc = tphase + ophase;
  for (std::size_t i = 0; i < words; ++i) {
    const std::uint64_t x1 = tx[i], z1 = tz[i], x2 = ox[i], z2 = oz[i];
    const std::uint64_t xr = x1 ^ x2, zr = z1 ^ z2;
    acc += std::popcount(x1 & z1) + std::popcount(x2 & z2) + 2 * std::popcount(z1 & x2) -
           std::popcount(xr & zr);
    tx[i] = xr;
    tz[i] = zr;
  }
  return ((acc % 4) + 4) % 4;
}

}  // namespace pauli_kernels

/// True iff the symplectic inner product vanishes. Throws on size mismatch.
bool commutes(const PauliString& p, const PauliString& q);

/// Operator product p * q with full i-power bookkeeping.
PauliString multiply(const PauliString& p, const PauliString& q);

/// Truncated binary vector (x bits on A | z bits on A); the phase is dropped.
BitVector restrict_to(const PauliString& p, const Region& a);

/// Symplectic product of two truncated vectors produced by restrict_to.
bool truncated_anticommute(const BitVector& u, const BitVector& v);

}  // namespace purify
