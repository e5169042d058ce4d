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

#include <doctest.h>

#include <random>
#include <vector>

#include "dense_oracle.hpp"
#include "purify/error.hpp"
#include "purify/pauli.hpp"

using namespace purify;

namespace {

std::vector<PauliString> all_paulis(std::size_t n) {
  std::vector<PauliString> out;
  const std::size_t count = std::size_t{1} << (2 * n);
  for (std::size_t code = 0; code < count; ++code) {
    PauliString p(n);
    for (std::size_t q = 0; q < n; ++q) p.set(q, (code >> (2 * q)) & 1u, (code >> (2 * q + 1)) & 1u);
    out.push_back(p);
  }
  return out;
}

PauliString random_pauli(std::size_t n, std::mt19937_64& gen, bool any_phase) {
  PauliString p(n);
  for (std::size_t q = 0; q < n; ++q) p.set(q, gen() & 1u, gen() & 1u);
  p.set_phase(any_phase ? static_cast<int>(gen() % 4) : static_cast<int>(2 * (gen() % 2)));
  return p;
}

bool dense_commute(const oracle::Matrix& a, const oracle::Matrix& b) {
  return (a * b - b * a).norm() < 1e-9;
}

}  // namespace

TEST_CASE("commutes: single-qubit and two-qubit basics") {
  CHECK_FALSE(commutes(PauliString::from_string("XI"), PauliString::from_string("ZI")));
  CHECK(commutes(PauliString::from_string("XX"), PauliString::from_string("ZZ")));
  CHECK(commutes(PauliString::from_string("YI"), PauliString::from_string("YI")));
  CHECK_THROWS_AS(commutes(PauliString(2), PauliString(3)), ValidationError);
}

TEST_CASE("commutes agrees with dense matrices for every pair, n <= 2") {
  for (std::size_t n : {1u, 2u}) {
    const auto ps = all_paulis(n);
    for (const auto& p : ps) {
      for (const auto& q : ps) {
        CHECK(commutes(p, q) == dense_commute(oracle::pauli_matrix(p), oracle::pauli_matrix(q)));
      }
    }
  }
}

TEST_CASE("multiply: phases match dense products") {
  const auto xz = multiply(PauliString::from_string("X"), PauliString::from_string("Z"));
  CHECK(xz.to_string() == "-iY");
  CHECK(multiply(PauliString::from_string("Z"), PauliString::from_string("X")).to_string() == "+iY");
  const auto xxzz = multiply(PauliString::from_string("XX"), PauliString::from_string("ZZ"));
  CHECK(xxzz.to_string() == "-YY");

  // Exhaustive over all 16 x 16 two-qubit strings and all four phases each.
  for (auto p : all_paulis(2)) {
    for (auto q : all_paulis(2)) {
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          p.set_phase(a);
          q.set_phase(b);
          const auto r = multiply(p, q);
          const auto err = (oracle::pauli_matrix(r) - oracle::pauli_matrix(p) * oracle::pauli_matrix(q)).norm();
          REQUIRE(err < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("multiply: Hermitian involution gives the identity with phase 0") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_pauli(1 + trial % 9, gen, false);
    const auto sq = multiply(p, p);
    CHECK(sq.is_identity());
    CHECK(sq.phase() == 0);
  }
}

TEST_CASE("multiply: associativity, identity and dense agreement on random strings") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const auto a = random_pauli(n, gen, true);
    const auto b = random_pauli(n, gen, true);
    const auto c = random_pauli(n, gen, true);
    CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
    CHECK(multiply(a, PauliString(n)) == a);
    if (n <= 3) {
      const auto err =
          (oracle::pauli_matrix(multiply(a, b)) - oracle::pauli_matrix(a) * oracle::pauli_matrix(b)).norm();
      CHECK(err < 1e-12);
    }
  }
  CHECK_THROWS_AS(multiply(PauliString(2), PauliString(4)), ValidationError);
}

TEST_CASE("multiply: packed words across the 64-bit boundary") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_pauli(130, gen, false);
    const auto b = random_pauli(130, gen, false);
    // Product phase equals the sum of per-site phases.
    int expected = a.phase() + b.phase();
    for (std::size_t q = 0; q < 130; ++q) {
      PauliString sa(1), sb(1);
      sa.set(0, a.x(q), a.z(q));
      sb.set(0, b.x(q), b.z(q));
      expected += multiply(sa, sb).phase();
    }
    CHECK(multiply(a, b).phase() == expected % 4);
  }
}

TEST_CASE("restrict_to selects x and z bits on the region") {
  const std::size_t L = 4;
  const Region a01({0, 1}, L);
  CHECK(restrict_to(PauliString::from_string("ZZII"), a01).to_string() == "0011");
  CHECK(restrict_to(PauliString::from_string("IIZZ"), a01).to_string() == "0000");
  CHECK(restrict_to(PauliString::from_string("IXYI"), Region({1, 2}, L)).to_string() == "1101");
}

TEST_CASE("truncated anticommutation matches dense partial operators, n <= 3") {
  const std::size_t n = 3;
  const auto ps = all_paulis(n);
  for (const auto& sites : std::vector<std::vector<std::size_t>>{{0}, {1, 2}, {0, 2}}) {
    const Region a(sites, n);
    for (std::size_t i = 0; i < ps.size(); i += 3) {
      for (std::size_t j = 0; j < ps.size(); j += 5) {
        PauliString pa(a.size()), qa(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
          pa.set(k, ps[i].x(sites[k]), ps[i].z(sites[k]));
          qa.set(k, ps[j].x(sites[k]), ps[j].z(sites[k]));
        }
        const bool dense_anti = !dense_commute(oracle::pauli_matrix(pa), oracle::pauli_matrix(qa));
        CHECK(truncated_anticommute(restrict_to(ps[i], a), restrict_to(ps[j], a)) == dense_anti);
      }
    }
  }
}

TEST_CASE("text form and region validation") {
  CHECK(PauliString::from_string("+XIZY").to_string() == "+XIZY");
  CHECK(PauliString::from_string("-ZZII").to_string() == "-ZZII");
  CHECK(PauliString::from_string("XY").phase() == 0);
  CHECK_THROWS_AS(PauliString::from_string("+XQ"), ValidationError);
  CHECK_THROWS_AS(Region({0, 0}, 4), ValidationError);
  CHECK_THROWS_AS(Region({4}, 4), ValidationError);
  CHECK(Region::window(3, 3, 4).sites() == std::vector<std::size_t>{0, 1, 3});
  CHECK(Region::half_chain(8).complement().sites() == std::vector<std::size_t>{4, 5, 6, 7});
}
