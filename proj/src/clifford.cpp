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

#include "purify/clifford.hpp"

#include <algorithm>

#include "purify/error.hpp"

namespace purify {

namespace {

using Bits = std::vector<int>;
using Rows = std::vector<Bits>;

int inner(const Bits& v, const Bits& w) {
  int t = 0;
  for (std::size_t i = 0; i + 1 < v.size(); i += 2) t += v[i] * w[i + 1] + w[i] * v[i + 1];
  return t & 1;
}

Bits transvection(const Bits& k, const Bits& v) {
  const int c = inner(k, v);
  Bits out(v);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] + c * k[i]) & 1;
  return out;
}

Bits add(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + b[i]) & 1;
  return out;
}

Bits int_to_bits(std::size_t value, std::size_t len) {
  Bits out(len);
  for (std::size_t j = 0; j < len; ++j) {
    out[j] = static_cast<int>(value & 1u);
    value >>= 1;
  }
  return out;
}

// Two transvections (h1, h2) with y = T_h1 T_h2 x.
std::array<Bits, 2> find_transvection(const Bits& x, const Bits& y) {
  const std::size_t nn = x.size();
  const std::size_t n = nn / 2;
  std::array<Bits, 2> out{Bits(nn, 0), Bits(nn, 0)};
  if (x == y) return out;
  if (inner(x, y) == 1) {
    out[0] = add(x, y);
    return out;
  }
  Bits z(nn, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ii = 2 * i;
    if ((x[ii] + x[ii + 1]) != 0 && (y[ii] + y[ii + 1]) != 0) {
      z[ii] = (x[ii] + y[ii]) & 1;
      z[ii + 1] = (x[ii + 1] + y[ii + 1]) & 1;
      if (z[ii] + z[ii + 1] == 0) {
        z[ii + 1] = 1;
        if (x[ii] != x[ii + 1]) z[ii] = 1;
      }
      out[0] = add(x, z);
      out[1] = add(y, z);
      return out;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ii = 2 * i;
    if ((x[ii] + x[ii + 1]) != 0 && (y[ii] + y[ii + 1]) == 0) {
      if (x[ii] == x[ii + 1]) {
        z[ii + 1] = 1;
      } else {
        z[ii + 1] = x[ii];
        z[ii] = x[ii + 1];
      }
      break;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ii = 2 * i;
    if ((x[ii] + x[ii + 1]) == 0 && (y[ii] + y[ii + 1]) != 0) {
      if (y[ii] == y[ii + 1]) {
        z[ii + 1] = 1;
      } else {
        z[ii + 1] = y[ii];
        z[ii] = y[ii + 1];
      }
      break;
    }
  }
  out[0] = add(x, z);
  out[1] = add(y, z);
  return out;
}

Rows symplectic_rows(std::size_t index, std::size_t n) {
  const std::size_t nn = 2 * n;
  const std::size_t s = (std::size_t{1} << nn) - 1;
  const std::size_t k = (index % s) + 1;
  index /= s;

  Bits f1 = int_to_bits(k, nn);
  Bits e1(nn, 0);
  e1[0] = 1;
  const auto t = find_transvection(e1, f1);

  const Bits bits = int_to_bits(index % (std::size_t{1} << (nn - 1)), nn - 1);
  Bits eprime = e1;
  for (std::size_t j = 2; j < nn; ++j) eprime[j] = bits[j - 1];
  Bits h0 = transvection(t[0], eprime);
  h0 = transvection(t[1], h0);
  if (bits[0] == 1) std::fill(f1.begin(), f1.end(), 0);

  Rows g(nn, Bits(nn, 0));
  g[0][0] = 1;
  g[1][1] = 1;
  if (n != 1) {
    const Rows sub = symplectic_rows(index >> (nn - 1), n - 1);
    for (std::size_t r = 0; r < sub.size(); ++r) {
      for (std::size_t c = 0; c < sub.size(); ++c) g[r + 2][c + 2] = sub[r][c];
    }
  }
  for (std::size_t j = 0; j < nn; ++j) {
    g[j] = transvection(t[0], g[j]);
    g[j] = transvection(t[1], g[j]);
    g[j] = transvection(h0, g[j]);
    g[j] = transvection(f1, g[j]);
  }
  return g;
}

// Hermitian two-qubit Pauli from an interleaved (x0, z0, x1, z1) pattern.
PauliString pauli_from_pattern(unsigned bits, bool negative) {
  PauliString p(2);
  p.set(0, bits & 1u, bits & 2u);
  p.set(1, bits & 4u, bits & 8u);
  p.set_phase(negative ? 2 : 0);
  return p;
}

unsigned pattern_of(const PauliString& p) {
  return (p.x(0) ? 1u : 0u) | (p.z(0) ? 2u : 0u) | (p.x(1) ? 4u : 0u) | (p.z(1) ? 8u : 0u);
}

}  // namespace

int symplectic_form4(std::uint8_t u, std::uint8_t v) {
  const int a = ((u & 1) & ((v >> 1) & 1)) ^ (((u >> 1) & 1) & (v & 1));
  const int b = (((u >> 2) & 1) & ((v >> 3) & 1)) ^ (((u >> 3) & 1) & ((v >> 2) & 1));
  return a ^ b;
}

bool is_symplectic(const Symplectic4& s) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const int expected = ((i ^ j) == 1) ? 1 : 0;
      if (symplectic_form4(s[i], s[j]) != expected) return false;
    }
  }
  return true;
}

Symplectic4 symplectic_from_index(std::size_t index) {
  if (index >= kSymplecticCount) throw ValidationError("symplectic index out of range [0, 720)");
  const Rows g = symplectic_rows(index, 2);
  Symplectic4 s{};
  for (std::size_t r = 0; r < 4; ++r) {
    std::uint8_t row = 0;
    for (std::size_t c = 0; c < 4; ++c) row |= static_cast<std::uint8_t>(g[r][c] << c);
    s[r] = row;
  }
  return s;
}

TwoQubitClifford::TwoQubitClifford(const Symplectic4& s, std::uint8_t signs)
    : sym_(s), signs_(static_cast<std::uint8_t>(signs & 0xF)) {
  std::array<PauliString, 4> images;
  for (std::size_t k = 0; k < 4; ++k) images[k] = pauli_from_pattern(s[k], (signs_ >> k) & 1u);
  for (unsigned pattern = 0; pattern < 16; ++pattern) {
    PauliString acc(2);
    acc.set_phase(((pattern & 1u) && (pattern & 2u) ? 1 : 0) +
                  ((pattern & 4u) && (pattern & 8u) ? 1 : 0));
    for (std::size_t k = 0; k < 4; ++k) {
      if ((pattern >> k) & 1u) acc = multiply(acc, images[k]);
    }
    if (!acc.is_hermitian()) {
      throw ValidationError("gate images do not define a Clifford (non-Hermitian image)");
    }
    lut_[pattern] = static_cast<std::uint8_t>(pattern_of(acc) | (acc.phase() == 2 ? 0x10 : 0));
  }
}

TwoQubitClifford TwoQubitClifford::from_images(const std::array<PauliString, 4>& images) {
  Symplectic4 s{};
  std::uint8_t signs = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    if (images[k].size() != 2 || !images[k].is_hermitian()) {
      throw ValidationError("gate images must be Hermitian two-qubit Pauli strings");
    }
    s[k] = static_cast<std::uint8_t>(pattern_of(images[k]));
    if (images[k].phase() == 2) signs |= static_cast<std::uint8_t>(1u << k);
  }
  if (!is_symplectic(s)) throw ValidationError("gate images violate commutation relations");
  return TwoQubitClifford(s, signs);
}

TwoQubitClifford TwoQubitClifford::cnot() {
  return from_images({PauliString::from_string("+XX"), PauliString::from_string("+ZI"),
                      PauliString::from_string("+IX"), PauliString::from_string("+ZZ")});
}

PauliString TwoQubitClifford::image(std::size_t k) const {
  return pauli_from_pattern(sym_.at(k), (signs_ >> k) & 1u);
}

PauliString TwoQubitClifford::conjugate(const PauliString& p) const {
  if (p.size() != 2) throw ValidationError("conjugate expects a two-qubit Pauli string");
  const std::uint8_t e = lut_[pattern_of(p)];
  PauliString out = pauli_from_pattern(e & 0xF, false);
  out.set_phase(p.phase() + ((e & 0x10) ? 2 : 0));
  return out;
}

const CliffordTable& CliffordTable::instance() {
  static const CliffordTable table;
  return table;
}

CliffordTable::CliffordTable() {
  gates_.reserve(kTwoQubitCliffordCount);
  for (std::size_t i = 0; i < kSymplecticCount; ++i) {
    const Symplectic4 s = symplectic_from_index(i);
    if (s == Symplectic4{1, 2, 4, 8}) identity_index_ = i;
    for (std::uint8_t signs = 0; signs < 16; ++signs) gates_.emplace_back(s, signs);
  }
}

}  // namespace purify
