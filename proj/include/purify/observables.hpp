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

#include "purify/gf2.hpp"
#include "purify/pauli.hpp"
#include "purify/tableau.hpp"

namespace purify {

/// -log2 Tr rho^2 = L - m, in bits.
std::size_t log_purity(const MixedTableau& t);

/// m x m anticommutation matrix of the generators truncated to A.
BitMatrix j_matrix(const MixedTableau& t, const Region& a);

/// log2 |rho^{T_A}|_1 = rank(J) / 2. A must be a non-empty proper subset.
std::size_t negativity(const MixedTableau& t, const Region& a);

/// E_l for windows [anchor, anchor + l) (mod L), l = 1..l_max; l_max < L.
std::vector<std::size_t> negativity_profile(const MixedTableau& t, std::size_t l_max,
                                            std::size_t anchor = 0);

}  // namespace purify
