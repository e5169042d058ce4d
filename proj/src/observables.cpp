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

#include "purify/observables.hpp"

#include "purify/error.hpp"

namespace purify {

std::size_t log_purity(const MixedTableau& t) {
  return t.num_qubits() - t.canonical_generators().size();
}

BitMatrix j_matrix(const MixedTableau& t, const Region& a) {
  if (a.qubits() != t.num_qubits()) throw ValidationError("region built for another chain length");
  const std::size_t m = t.num_generators();
  const std::size_t k = a.size();
  const std::size_t w = words_for(k);
  const std::size_t half = t.words_per_half();

  // Gather the truncated x and z halves of each generator into packed rows.
  std::vector<std::uint64_t> tx(m * w, 0), tz(m * w, 0);
  for (std::size_t g = 0; g < m; ++g) {
    const std::uint64_t* r = t.row_data(g);
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t q = a.sites()[j];
      const std::uint64_t bit = std::uint64_t{1} << (j % 64);
      if ((r[q / 64] >> (q % 64)) & 1u) tx[g * w + j / 64] |= bit;
      if ((r[half + q / 64] >> (q % 64)) & 1u) tz[g * w + j / 64] |= bit;
    }
  }
  BitMatrix jm(m, m);
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t h = g + 1; h < m; ++h) {
      if (pauli_kernels::symplectic(&tx[g * w], &tz[g * w], &tx[h * w], &tz[h * w], w)) {
        jm.set(g, h, true);
        jm.set(h, g, true);
      }
    }
  }
  return jm;
}

std::size_t negativity(const MixedTableau& t, const Region& a) {
  if (a.empty() || a.size() >= t.num_qubits()) {
    throw ValidationError("negativity needs a non-empty proper subsystem");
  }
  const std::size_t r = gf2_rank(j_matrix(t, a));
  if (r % 2 != 0) throw RuntimeFailure("anticommutation matrix has odd rank");
  return r / 2;
}

std::vector<std::size_t> negativity_profile(const MixedTableau& t, std::size_t l_max,
                                            std::size_t anchor) {
  if (l_max >= t.num_qubits()) throw ValidationError("profile length must be below L");
  std::vector<std::size_t> out;
  out.reserve(l_max);
  for (std::size_t l = 1; l <= l_max; ++l) {
    out.push_back(negativity(t, Region::window(anchor % t.num_qubits(), l, t.num_qubits())));
  }
  return out;
}

}  // namespace purify
