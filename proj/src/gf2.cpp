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

#include "purify/gf2.hpp"

#include <utility>

namespace purify {

std::string BitVector::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

BitMatrix BitMatrix::identity(std::size_t k) {
  BitMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) m.set(i, i, true);
  return m;
}

bool BitMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = r + 1; c < cols_; ++c) {
      if (get(r, c) != get(c, r)) return false;
    }
  }
  return true;
}

bool BitMatrix::has_zero_diagonal() const {
  for (std::size_t r = 0; r < rows_ && r < cols_; ++r) {
    if (get(r, r)) return false;
  }
  return true;
}

std::size_t gf2_rank(const BitMatrix& input) {
  const std::size_t rows = input.rows();
  const std::size_t stride = words_for(input.cols());
  if (rows == 0 || stride == 0) return 0;

  std::vector<std::uint64_t> a(rows * stride);
  for (std::size_t r = 0; r < rows; ++r) {
    auto src = input.row(r);
    std::copy(src.begin(), src.end(), a.begin() + static_cast<std::ptrdiff_t>(r * stride));
  }

  std::size_t rank = 0;
  for (std::size_t w = 0; w < stride && rank < rows; ++w) {
    for (unsigned b = 0; b < 64 && rank < rows; ++b) {
      const std::uint64_t mask = std::uint64_t{1} << b;
      std::size_t pivot = rank;
      while (pivot < rows && !(a[pivot * stride + w] & mask)) ++pivot;
      if (pivot == rows) continue;
      if (pivot != rank) {
        for (std::size_t k = w; k < stride; ++k) {
          std::swap(a[pivot * stride + k], a[rank * stride + k]);
        }
      }
      const std::uint64_t* prow = &a[rank * stride];
      for (std::size_t r = rank + 1; r < rows; ++r) {
        std::uint64_t* row = &a[r * stride];
        if (row[w] & mask) {
          for (std::size_t k = w; k < stride; ++k) row[k] ^= prow[k];
        }
      }
      ++rank;
    }
  }
  return rank;
}

}  // namespace purify
