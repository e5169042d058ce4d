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

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "purify/purify.h"

namespace {

void collect(const char* line, void* user) { static_cast<std::vector<std::string>*>(user)->push_back(line); }

struct Tableau {
  purify_tableau* t = nullptr;
  explicit Tableau(size_t n) { REQUIRE(purify_tableau_new(n, &t) == PURIFY_OK); }
  ~Tableau() { purify_tableau_free(t); }
};

struct Rng {
  purify_rng* r = nullptr;
  explicit Rng(uint64_t seed) { REQUIRE(purify_rng_new(seed, &r) == PURIFY_OK); }
  ~Rng() { purify_rng_free(r); }
};

}  // namespace

TEST_CASE("version and table size") {
  CHECK(std::strlen(purify_version()) > 0);
  CHECK(purify_clifford_count() == 11520);
}

TEST_CASE("maximally mixed state purifies under full measurement") {
  Tableau t(8);
  Rng rng(3);
  size_t v = 0;
  CHECK(purify_tableau_num_qubits(t.t, &v) == PURIFY_OK);
  CHECK(v == 8);
  CHECK(purify_tableau_rank(t.t, &v) == PURIFY_OK);
  CHECK(v == 0);
  CHECK(purify_tableau_log_purity(t.t, &v) == PURIFY_OK);
  CHECK(v == 8);
  for (size_t s = 0; s < 10; ++s) REQUIRE(purify_tableau_step(t.t, rng.r, s, 0.0) == PURIFY_OK);
  CHECK(purify_tableau_log_purity(t.t, &v) == PURIFY_OK);
  CHECK(v == 8);
  REQUIRE(purify_tableau_step(t.t, rng.r, 10, 1.0) == PURIFY_OK);
  CHECK(purify_tableau_log_purity(t.t, &v) == PURIFY_OK);
  CHECK(v == 0);
  CHECK(purify_tableau_negativity(t.t, 0, 4, &v) == PURIFY_OK);
  CHECK(v == 0);
  CHECK(purify_tableau_check(t.t) == PURIFY_OK);
}

TEST_CASE("gates, measurements and text round trip") {
  Tableau t(4);
  Rng rng(11);
  int outcome = 0, purified = 0;
  REQUIRE(purify_tableau_measure_z(t.t, rng.r, 0, &outcome, &purified) == PURIFY_OK);
  CHECK((outcome == 1 || outcome == -1));
  CHECK(purified == 1);
  size_t index = 0;
  REQUIRE(purify_tableau_apply_random_clifford(t.t, rng.r, 0, 1, &index) == PURIFY_OK);
  CHECK(index < 11520);
  REQUIRE(purify_tableau_apply_clifford(t.t, 17, 1, 2) == PURIFY_OK);

  size_t needed = 0;
  REQUIRE(purify_tableau_to_text(t.t, nullptr, 0, &needed) == PURIFY_OK);
  std::string text(needed, '\0');
  REQUIRE(purify_tableau_to_text(t.t, text.data(), text.size(), &needed) == PURIFY_OK);
  text.resize(needed - 1);
  CHECK(text.rfind("L=4\n", 0) == 0);

  char small[3];
  REQUIRE(purify_tableau_to_text(t.t, small, sizeof small, nullptr) == PURIFY_OK);
  CHECK(std::string(small) == "L=");

  purify_tableau* copy = nullptr;
  REQUIRE(purify_tableau_from_text(text.c_str(), &copy) == PURIFY_OK);
  size_t rank = 0;
  CHECK(purify_tableau_rank(copy, &rank) == PURIFY_OK);
  CHECK(rank == 1);
  purify_tableau* clone = nullptr;
  REQUIRE(purify_tableau_clone(copy, &clone) == PURIFY_OK);
  purify_tableau_free(copy);
  CHECK(purify_tableau_rank(clone, &rank) == PURIFY_OK);
  CHECK(rank == 1);
  purify_tableau_free(clone);
}

TEST_CASE("errors map to status codes") {
  Tableau t(4);
  Rng rng(1);
  CHECK(purify_tableau_apply_clifford(t.t, 11520, 0, 1) == PURIFY_ERR_VALIDATION);
  CHECK(std::string(purify_last_error()) == "gate index out of range");
  CHECK(purify_tableau_rank(nullptr, nullptr) == PURIFY_ERR_VALIDATION);
  CHECK(std::string(purify_last_error()).find("null pointer") != std::string::npos);
  CHECK(purify_tableau_step(t.t, rng.r, 0, 1.5) == PURIFY_ERR_VALIDATION);
  CHECK(std::string(purify_last_error()) == "p out of [0,1]");
  int outcome = 0;
  CHECK(purify_tableau_measure_z(t.t, rng.r, 9, &outcome, nullptr) != PURIFY_OK);
  purify_tableau* bad = nullptr;
  CHECK(purify_tableau_from_text("L=2\n+XYZ\n", &bad) != PURIFY_OK);
  CHECK(bad == nullptr);
  size_t v = 0;
  CHECK(purify_tableau_rank(t.t, &v) == PURIFY_OK);
  CHECK(std::string(purify_last_error()).empty());
}

TEST_CASE("log callback and pipelines") {
  std::vector<std::string> lines;
  purify_set_log_callback(collect, &lines);
  CHECK(purify_selftest() == PURIFY_OK);
  CHECK(lines.size() == 6);
  for (const auto& l : lines) CHECK(l.rfind("PASS ", 0) == 0);

  lines.clear();
  purify_effham_options o;
  purify_effham_defaults(&o);
  o.num_sites = 13;
  CHECK(purify_effham(&o) == PURIFY_ERR_VALIDATION);
  CHECK(std::string(purify_last_error()).find("L must be in [2, 12]") != std::string::npos);

  const auto dir = std::filesystem::temp_directory_path() / "purify_test_capi";
  const std::string dir_s = dir.string();
  const double gammas[] = {0.0, 1.0};
  purify_effham_defaults(&o);
  o.num_sites = 4;
  o.gammas = gammas;
  o.num_gammas = 2;
  o.print_coefficients = 1;
  o.out_dir = dir_s.c_str();
  lines.clear();
  CHECK(purify_effham(&o) == PURIFY_OK);
  CHECK(lines.at(0) == "ZZ -0.4");
  CHECK(lines.at(1) == "YY -0.1");
  CHECK(lines.at(2) == "X 0.2");
  std::ifstream csv(dir / "effham.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "gamma,E0,E1,gap,degenerate,X_0,X_1,X_2,X_3,evolved_overlap");

  CHECK(purify_collapse((dir / "missing.csv").string().c_str(), nullptr, dir_s.c_str(), 0.16, 1.5, 0.0) ==
        PURIFY_ERR_VALIDATION);
  CHECK(purify_simulate(nullptr) == PURIFY_ERR_VALIDATION);
  purify_set_log_callback(nullptr, nullptr);
  std::filesystem::remove_all(dir);
}
