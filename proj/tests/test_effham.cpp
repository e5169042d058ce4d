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

#include <cmath>
#include <fstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "purify/effective_hamiltonian.hpp"
#include "purify/error.hpp"

using namespace purify;

#ifndef PURIFY_TEST_DATA_DIR
#define PURIFY_TEST_DATA_DIR "."
#endif

TEST_CASE("pair coefficients") {
  const auto c = verify_hnn_coefficients();
  CHECK(std::abs(c.zz - (-0.4)) < 1e-12);
  CHECK(std::abs(c.yy - (-0.1)) < 1e-12);
  CHECK(std::abs(c.x - 0.2) < 1e-12);
  CHECK(std::abs(c.identity - 0.5) < 1e-12);
  CHECK(c.max_other < 1e-12);
  CHECK(std::abs(c.raw_zz - 0.4) < 1e-12);
  CHECK(std::abs(c.raw_yy - 0.1) < 1e-12);
  CHECK(std::abs(c.raw_x_left - 0.2) < 1e-12);
  CHECK(std::abs(c.raw_x_right - 0.2) < 1e-12);
}

TEST_CASE("build_heff structure") {
  const auto h = build_heff(HeffSpec::uniform(6, 0.3, 0.4));
  CHECK((h - h.transpose()).norm() == 0.0);
  CHECK(h.rows() == 64);

  const auto s = HeffSpec::uniform(5, 0.1);
  for (double j : s.coupling) CHECK(j == 1.0);

  HeffSpec bad = HeffSpec::uniform(4, 0.1);
  bad.gamma[2] = -1.0;
  CHECK_THROWS_AS(build_heff(bad), ValidationError);
  CHECK_THROWS_AS(build_heff(HeffSpec::uniform(13, 0.1)), ValidationError);
  CHECK_THROWS_AS(identity_supervector(13), ValidationError);
}

TEST_CASE("L=2 gamma=0 spectrum is {-1,-1,1,1}") {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_heff(HeffSpec::uniform(2, 0.0)));
  const std::array<double, 4> expect{-1, -1, 1, 1};
  for (int k = 0; k < 4; ++k) CHECK(std::abs(es.eigenvalues()(k) - expect[static_cast<std::size_t>(k)]) < 1e-12);
}

TEST_CASE("L=4 gamma=0 spectrum matches the golden file") {
  std::ifstream in(std::string(PURIFY_TEST_DATA_DIR) + "/golden/heff_L4_gamma0.txt");
  REQUIRE(in.good());
  std::vector<double> golden;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    golden.push_back(std::stod(line));
  }
  REQUIRE(golden.size() == 16);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_heff(HeffSpec::uniform(4, 0.0)));
  for (std::size_t k = 0; k < 16; ++k) CHECK(std::abs(es.eigenvalues()(static_cast<Eigen::Index>(k)) - golden[k]) < 1e-12);
  const auto gs = ground_state(build_heff(HeffSpec::uniform(4, 0.0)));
  CHECK(gs.degenerate);
  CHECK(gs.space.cols() == 2);
}

TEST_CASE("ground_state") {
  Eigen::MatrixXd d(2, 2);
  d << 0, 0, 0, 1;
  const auto gs = ground_state(d);
  CHECK(gs.energy == 0.0);
  CHECK(std::abs(std::abs(gs.vector(0)) - 1.0) < 1e-15);
  CHECK_FALSE(gs.degenerate);
  CHECK(gs.gap == doctest::Approx(1.0));

  const auto h = build_heff(HeffSpec::uniform(6, 0.2));
  const auto a = ground_state(h);
  const auto b = ground_state(h + 3.5 * Eigen::MatrixXd::Identity(64, 64));
  CHECK(b.energy == doctest::Approx(a.energy + 3.5).epsilon(1e-12));
  CHECK(std::abs(std::abs(a.vector.dot(b.vector)) - 1.0) < 1e-10);
}

TEST_CASE("strong field polarizes along X") {
  double last = 0.0;
  for (double g : {0.5, 2.0, 10.0, 100.0}) {
    const auto gs = ground_state(build_heff(HeffSpec::uniform(6, g)));
    const Eigen::VectorXd plus = Eigen::VectorXd::Constant(64, 1.0 / 8.0);
    const double overlap = std::abs(gs.vector.dot(plus));
    CHECK(overlap > last);
    last = overlap;
  }
  CHECK(last > 0.9999);
}

TEST_CASE("imaginary-time evolution reaches the ground state at L=8") {
  const auto h = build_heff(HeffSpec::uniform(8, 0.1));
  const auto gs = ground_state(h);
  CHECK_FALSE(gs.degenerate);
  CHECK(std::abs(gs.energy - (-5.159886414630115)) < 1e-10);
  const auto r = imaginary_time_evolve(h, identity_supervector(8), 0.1, 3000, 500);
  CHECK_FALSE(r.zero_overlap);
  CHECK(std::abs(gs.vector.dot(r.final_state)) > 1.0 - 1e-8);
  CHECK(std::abs(r.energies.back() - gs.energy) < 1e-8);
  for (std::size_t k = 1; k < r.energies.size(); ++k) CHECK(r.energies[k] <= r.energies[k - 1] + 1e-12);
  CHECK(r.snapshots.size() == 7);

  const auto still = imaginary_time_evolve(h, gs.vector, 0.1, 50);
  CHECK(std::abs(std::abs(still.final_state.dot(gs.vector)) - 1.0) < 1e-12);

  // A vector orthogonal to the ground state never reaches it.
  Eigen::VectorXd orth = identity_supervector(8);
  orth -= gs.vector * gs.vector.dot(orth);
  const auto off = imaginary_time_evolve(h, orth, 0.1, 200);
  CHECK(off.zero_overlap);

  CHECK_THROWS_AS(imaginary_time_evolve(h, identity_supervector(8), 1.0, 10), ValidationError);
}

TEST_CASE("gamma sweep at L=8") {
  const auto rows = gamma_sweep(8, {0.0, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0});
  CHECK(rows.front().degenerate);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    CHECK(rows[k].gap > 0.0);
    CHECK_FALSE(rows[k].degenerate);
  }
  CHECK(rows[2].gap == doctest::Approx(0.214).epsilon(0.01));
  // Magnetization grows with the field.
  CHECK(rows.back().magnetization[0] > rows[1].magnetization[0]);
  CHECK(rows.back().magnetization[0] > 0.9);
}
