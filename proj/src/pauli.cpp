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

#include "purify/pauli.hpp"

#include <algorithm>

#include "purify/error.hpp"

namespace purify {

void PauliString::set(std::size_t q, bool x, bool z) {
  const std::uint64_t m = std::uint64_t{1} << (q % 64);
  x_[q / 64] = x ? (x_[q / 64] | m) : (x_[q / 64] & ~m);
  z_[q / 64] = z ? (z_[q / 64] | m) : (z_[q / 64] & ~m);
}

char PauliString::at(std::size_t q) const {
  static constexpr char kLabels[4] = {'I', 'X', 'Z', 'Y'};
  return kLabels[(x(q) ? 1 : 0) | (z(q) ? 2 : 0)];
}

bool PauliString::is_identity() const {
  return std::all_of(x_.begin(), x_.end(), [](auto w) { return w == 0; }) &&
         std::all_of(z_.begin(), z_.end(), [](auto w) { return w == 0; });
}

std::size_t PauliString::weight() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) c += std::popcount(x_[i] | z_[i]);
  return c;
}

PauliString PauliString::from_string(std::string_view text) {
  int phase = 0;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase += 1;
    ++pos;
  }
  PauliString p(text.size() - pos);
  for (std::size_t q = 0; pos < text.size(); ++pos, ++q) {
    switch (text[pos]) {
      case 'I': case '_': break;
      case 'X': p.set(q, true, false); break;
      case 'Z': p.set(q, false, true); break;
      case 'Y': p.set(q, true, true); break;
      default:
        throw ValidationError("invalid Pauli character '" + std::string(1, text[pos]) + "' in \"" +
                              std::string(text) + "\"");
    }
  }
  p.set_phase(phase);
  return p;
}

PauliString PauliString::single(std::size_t n, std::size_t q, char pauli) {
  if (q >= n) throw ValidationError("qubit index out of range");
  PauliString p(n);
  p.set(q, pauli == 'X' || pauli == 'Y', pauli == 'Z' || pauli == 'Y');
  return p;
}

std::string PauliString::to_string() const {
  std::string s;
  s += (phase_ >= 2) ? '-' : '+';
  if (phase_ & 1) s += 'i';
  for (std::size_t q = 0; q < n_; ++q) s += at(q);
  return s;
}

Region::Region(std::vector<std::size_t> sites, std::size_t n) : sites_(std::move(sites)), n_(n) {
  std::sort(sites_.begin(), sites_.end());
  if (std::adjacent_find(sites_.begin(), sites_.end()) != sites_.end()) {
    throw ValidationError("region contains duplicate sites");
  }
  if (!sites_.empty() && sites_.back() >= n) throw ValidationError("region site out of range");
}

Region Region::window(std::size_t first, std::size_t length, std::size_t n) {
  if (length > n) throw ValidationError("window longer than the chain");
  std::vector<std::size_t> s;
  s.reserve(length);
  for (std::size_t k = 0; k < length; ++k) s.push_back((first + k) % n);
  return Region(std::move(s), n);
}

Region Region::complement() const {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t q = 0; q < n_; ++q) {
    if (k < sites_.size() && sites_[k] == q) {
      ++k;
    } else {
      out.push_back(q);
    }
  }
  return Region(std::move(out), n_);
}

bool commutes(const PauliString& p, const PauliString& q) {
  if (p.size() != q.size()) throw ValidationError("commutes: Pauli strings differ in length");
  return pauli_kernels::symplectic(p.x_words().data(), p.z_words().data(), q.x_words().data(),
                                   q.z_words().data(), p.x_words().size()) == 0;
}

PauliString multiply(const PauliString& p, const PauliString& q) {
  if (p.size() != q.size()) throw ValidationError("multiply: Pauli strings differ in length");
  PauliString r = p;
  r.set_phase(pauli_kernels::multiply_into(r.x_words().data(), r.z_words().data(), p.phase(),
                                           q.x_words().data(), q.z_words().data(), q.phase(),
                                           r.x_words().size()));
  return r;
}

BitVector restrict_to(const PauliString& p, const Region& a) {
  if (a.qubits() != p.size()) throw ValidationError("restrict_to: region built for another size");
  const std::size_t k = a.size();
  BitVector v(2 * k);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t q = a.sites()[j];
    v.set(j, p.x(q));
    v.set(k + j, p.z(q));
  }
  return v;
}

bool truncated_anticommute(const BitVector& u, const BitVector& v) {
  if (u.size() != v.size() || u.size() % 2 != 0) {
    throw ValidationError("truncated vectors must share an even length");
  }
  const std::size_t k = u.size() / 2;
  int acc = 0;
  for (std::size_t j = 0; j < k; ++j) {
    acc ^= (u.get(j) & v.get(k + j)) ^ (u.get(k + j) & v.get(j));
  }
  return acc != 0;
}

}  // namespace purify
