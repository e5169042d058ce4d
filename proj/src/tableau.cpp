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

#include "purify/tableau.hpp"

#include <algorithm>
#include <sstream>

#include "purify/error.hpp"
#include "purify/gf2.hpp"

namespace purify {

namespace {

inline bool test_bit(const std::uint64_t* w, std::size_t i) { return (w[i / 64] >> (i % 64)) & 1u; }

}  // namespace

MixedTableau::MixedTableau(std::size_t n) : n_(n), words_(words_for(n)), stride_(2 * words_for(n)) {}

MixedTableau MixedTableau::maximally_mixed(std::size_t num_qubits) {
  if (num_qubits < 2 || num_qubits % 2 != 0) {
    throw ValidationError("qubit count must be even and at least 2, got " +
                          std::to_string(num_qubits));
  }
  return MixedTableau(num_qubits);
}

MixedTableau MixedTableau::from_generators(std::size_t num_qubits,
                                           const std::vector<PauliString>& generators) {
  if (num_qubits == 0) throw ValidationError("qubit count must be positive");
  MixedTableau t(num_qubits);
  for (const auto& g : generators) {
    if (g.size() != num_qubits) throw ValidationError("generator length mismatch");
    t.append_row(g);
  }
  try {
    t.check_invariants();
  } catch (const RuntimeFailure& e) {
    throw ValidationError(e.what());
  }
  return t;
}

MixedTableau MixedTableau::from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t n = 0;
  std::vector<PauliString> gens;
  while (std::getline(in, line)) {
    line.erase(std::remove_if(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\r'; }),
               line.end());
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("L=", 0) == 0) {
      n = std::stoul(line.substr(2));
      continue;
    }
    gens.push_back(PauliString::from_string(line));
    if (n == 0) n = gens.back().size();
  }
  if (n == 0) throw ValidationError("tableau text carries neither L= nor any generator");
  return from_generators(n, gens);
}

void MixedTableau::append_row(const PauliString& p) {
  bits_.resize(bits_.size() + stride_, 0);
  std::uint64_t* r = row(phases_.size());
  std::copy(p.x_words().begin(), p.x_words().end(), r);
  std::copy(p.z_words().begin(), p.z_words().end(), r + words_);
  phases_.push_back(static_cast<std::uint8_t>(p.phase()));
  canon_.valid = false;
}

PauliString MixedTableau::generator(std::size_t k) const {
  if (k >= num_generators()) throw ValidationError("generator index out of range");
  PauliString p(n_);
  const std::uint64_t* r = row(k);
  std::copy(r, r + words_, p.x_words().begin());
  std::copy(r + words_, r + stride_, p.z_words().begin());
  p.set_phase(phases_[k]);
  return p;
}

std::vector<PauliString> MixedTableau::generators() const {
  std::vector<PauliString> out;
  out.reserve(num_generators());
  for (std::size_t k = 0; k < num_generators(); ++k) out.push_back(generator(k));
  return out;
}

void MixedTableau::apply(const TwoQubitClifford& gate, std::size_t a, std::size_t b) {
  if (a >= n_ || b >= n_ || a == b) throw ValidationError("gate sites out of range or equal");
  const std::size_t wa = a / 64, wb = b / 64;
  const unsigned sa = a % 64, sb = b % 64;
  const std::uint64_t ma = std::uint64_t{1} << sa, mb = std::uint64_t{1} << sb;
  const std::size_t m = num_generators();
  for (std::size_t k = 0; k < m; ++k) {
    std::uint64_t* x = row(k);
    std::uint64_t* z = x + words_;
    const unsigned pattern = static_cast<unsigned>(((x[wa] >> sa) & 1u) | (((z[wa] >> sa) & 1u) << 1) |
                                                   (((x[wb] >> sb) & 1u) << 2) |
                                                   (((z[wb] >> sb) & 1u) << 3));
    if (pattern == 0) continue;
    const std::uint8_t e = gate.lookup(pattern);
    x[wa] = (e & 1u) ? (x[wa] | ma) : (x[wa] & ~ma);
    z[wa] = (e & 2u) ? (z[wa] | ma) : (z[wa] & ~ma);
    x[wb] = (e & 4u) ? (x[wb] | mb) : (x[wb] & ~mb);
    z[wb] = (e & 8u) ? (z[wb] | mb) : (z[wb] & ~mb);
    if (e & 0x10u) phases_[k] ^= 2u;
  }
  canon_.valid = false;
}

void MixedTableau::build_canonical() const {
  const std::size_t m = num_generators();
  canon_.bits = bits_;
  canon_.phases = phases_;
  canon_.pivots.clear();
  std::uint64_t* base = canon_.bits.data();
  std::size_t rank = 0;
  // Columns 0..n-1 are x bits, n..2n-1 are z bits; within a row both halves
  // share the same word layout, so column c lives at word (c / n) * words_ + (c % n) / 64.
  for (std::size_t col = 0; col < 2 * n_ && rank < m; ++col) {
    const std::size_t q = col % n_;
    const std::size_t w = (col / n_) * words_ + q / 64;
    const std::uint64_t mask = std::uint64_t{1} << (q % 64);
    std::size_t piv = rank;
    while (piv < m && !(base[piv * stride_ + w] & mask)) ++piv;
    if (piv == m) continue;
    if (piv != rank) {
      std::swap_ranges(base + piv * stride_, base + (piv + 1) * stride_, base + rank * stride_);
      std::swap(canon_.phases[piv], canon_.phases[rank]);
    }
    const std::uint64_t* pr = base + rank * stride_;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank) continue;
      std::uint64_t* rr = base + r * stride_;
      if (rr[w] & mask) {
        canon_.phases[r] = static_cast<std::uint8_t>(pauli_kernels::multiply_into(
            rr, rr + words_, canon_.phases[r], pr, pr + words_, canon_.phases[rank], words_));
      }
    }
    canon_.pivots.push_back(col);
    ++rank;
  }
  canon_.bits.resize(rank * stride_);
  canon_.phases.resize(rank);
  canon_.valid = true;
}

std::vector<PauliString> MixedTableau::canonical_generators() const {
  if (!canon_.valid) build_canonical();
  std::vector<PauliString> out;
  for (std::size_t k = 0; k < canon_.phases.size(); ++k) {
    PauliString p(n_);
    const std::uint64_t* r = canon_.bits.data() + k * stride_;
    std::copy(r, r + words_, p.x_words().begin());
    std::copy(r + words_, r + stride_, p.z_words().begin());
    p.set_phase(canon_.phases[k]);
    out.push_back(std::move(p));
  }
  return out;
}

std::optional<int> MixedTableau::contains_up_to_sign(const PauliString& p) const {
  if (p.size() != n_) throw ValidationError("contains_up_to_sign: length mismatch");
  if (!canon_.valid) build_canonical();
  std::vector<std::uint64_t> res(stride_);
  std::copy(p.x_words().begin(), p.x_words().end(), res.begin());
  std::copy(p.z_words().begin(), p.z_words().end(), res.begin() + static_cast<std::ptrdiff_t>(words_));
  int phase = 0;
  for (std::size_t k = 0; k < canon_.pivots.size(); ++k) {
    const std::size_t col = canon_.pivots[k];
    const std::size_t q = col % n_;
    if (!test_bit(res.data() + (col / n_) * words_, q)) continue;
    const std::uint64_t* r = canon_.bits.data() + k * stride_;
    phase = pauli_kernels::multiply_into(res.data(), res.data() + words_, phase, r, r + words_,
                                         canon_.phases[k], words_);
  }
  if (std::any_of(res.begin(), res.end(), [](auto w) { return w != 0; })) return std::nullopt;
  // P0 * g_1 ... g_k = i^phase; commuting involutions give g_1 ... g_k = i^phase P0.
  return phase == 0 ? 1 : -1;
}

MeasurementOutcome MixedTableau::measure_z(std::size_t site, Rng& rng) {
  if (site >= n_) throw ValidationError("measurement site out of range");
  // The sign is drawn only when the outcome is random, keeping the stream
  // aligned with measure_z_with.
  const std::size_t w = site / 64;
  const std::uint64_t mask = std::uint64_t{1} << (site % 64);
  bool random = false;
  for (std::size_t k = 0; k < num_generators() && !random; ++k) random = (row(k)[w] & mask) != 0;
  if (!random && !contains_up_to_sign(PauliString::single(n_, site, 'Z'))) random = true;
  const int sign = random ? (rng.bit() ? -1 : 1) : 1;
  return measure_z_with(site, sign);
}

MeasurementOutcome MixedTableau::measure_z_with(std::size_t site, int forced_sign) {
  if (site >= n_) throw ValidationError("measurement site out of range");
  const std::size_t w = site / 64;
  const std::uint64_t mask = std::uint64_t{1} << (site % 64);
  const std::size_t m = num_generators();
  const std::uint8_t signed_phase = forced_sign < 0 ? 2 : 0;

  std::size_t first = m;
  for (std::size_t k = 0; k < m; ++k) {
    if (row(k)[w] & mask) {
      first = k;
      break;
    }
  }
  if (first < m) {
    const std::uint64_t* pr = row(first);
    for (std::size_t k = first + 1; k < m; ++k) {
      std::uint64_t* r = row(k);
      if (r[w] & mask) {
        phases_[k] = static_cast<std::uint8_t>(pauli_kernels::multiply_into(
            r, r + words_, phases_[k], pr, pr + words_, phases_[first], words_));
      }
    }
    std::uint64_t* r = row(first);
    std::fill(r, r + stride_, 0);
    r[words_ + w] = mask;
    phases_[first] = signed_phase;
    canon_.valid = false;
    return {forced_sign < 0 ? -1 : 1, MeasurementKind::RandomExisting, false};
  }

  PauliString zi = PauliString::single(n_, site, 'Z');
  if (auto s = contains_up_to_sign(zi)) return {*s, MeasurementKind::Deterministic, false};

  zi.set_phase(signed_phase);
  append_row(zi);
  return {forced_sign < 0 ? -1 : 1, MeasurementKind::Purifying, true};
}

void MixedTableau::check_invariants() const {
  const std::size_t m = num_generators();
  if (m > n_) throw RuntimeFailure("more generators than qubits");
  for (std::size_t k = 0; k < m; ++k) {
    if (phases_[k] & 1u) throw RuntimeFailure("generator " + std::to_string(k) + " is not Hermitian");
    for (std::size_t l = k + 1; l < m; ++l) {
      if (pauli_kernels::symplectic(row(k), row(k) + words_, row(l), row(l) + words_, words_)) {
        throw RuntimeFailure("generators " + std::to_string(k) + " and " + std::to_string(l) +
                             " anticommute");
      }
    }
  }
  BitMatrix mat(m, 2 * n_);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t q = 0; q < n_; ++q) {
      mat.set(k, q, test_bit(row(k), q));
      mat.set(k, n_ + q, test_bit(row(k) + words_, q));
    }
  }
  if (gf2_rank(mat) != m) throw RuntimeFailure("generators are linearly dependent");
}

std::string MixedTableau::to_text() const {
  std::string out = "L=" + std::to_string(n_) + "\n";
  for (std::size_t k = 0; k < num_generators(); ++k) out += generator(k).to_string() + "\n";
  return out;
}

}  // namespace purify
