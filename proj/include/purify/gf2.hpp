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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace purify {

constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

/// Fixed-length packed bit vector.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : n_(n), words_(words_for(n), 0) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i, bool v) {
    const std::uint64_t m = std::uint64_t{1} << (i % 64);
    if (v) {
      words_[i / 64] |= m;
    } else {
      words_[i / 64] &= ~m;
    }
  }
  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// "0101..." with bit 0 first.
  std::string to_string() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense row-major binary matrix with word-packed rows.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(words_for(cols)), words_(rows * stride_, 0) {}

  static BitMatrix identity(std::size_t k);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (words_[r * stride_ + c / 64] >> (c % 64)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v) {
    const std::uint64_t m = std::uint64_t{1} << (c % 64);
    auto& w = words_[r * stride_ + c / 64];
    if (v) {
      w |= m;
    } else {
      w &= ~m;
    }
  }
  std::span<const std::uint64_t> row(std::size_t r) const {
    return {words_.data() + r * stride_, stride_};
  }
  std::span<std::uint64_t> row(std::size_t r) { return {words_.data() + r * stride_, stride_}; }

  bool is_symmetric() const;
  bool has_zero_diagonal() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Rank over GF(2). Works on a copy; the argument is not modified.
std::size_t gf2_rank(const BitMatrix& m);

}  // namespace purify
