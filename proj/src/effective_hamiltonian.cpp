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

#include "purify/effective_hamiltonian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Eigenvalues>

#include "purify/circuit.hpp"
#include "purify/error.hpp"

namespace purify {

namespace {

using Complex4 = Eigen::Matrix<std::complex<double>, 4, 4>;

// Index 0 is the left site.
Complex4 two_site_pauli(char left, char right) {
  auto single = [](char c) {
    Eigen::Matrix2cd m;
    const std::complex<double> i(0, 1);
    switch (c) {
      case 'X': m << 0, 1, 1, 0; break;
      case 'Y': m << 0, -i, i, 0; break;
      case 'Z': m << 1, 0, 0, -1; break;
      default: m << 1, 0, 0, 1; break;
    }
    return m;
  };
  const auto a = single(left), b = single(right);
  Complex4 out;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) out(r, c) = a(r & 1, c & 1) * b(r >> 1, c >> 1);
  }
  return out;
}

double coefficient(const Complex4& op, char left, char right) {
  return (two_site_pauli(left, right).adjoint() * op).trace().real() / 4.0;
}

}  // namespace

HeffSpec HeffSpec::uniform(std::size_t num_sites, double gamma, double amplitude) {
  HeffSpec s;
  s.num_sites = num_sites;
  s.coupling = build_gate_profile(amplitude, num_sites).p;
  s.gamma.assign(num_sites, gamma);
  return s;
}

void HeffSpec::validate() const {
  if (num_sites < 2) throw ValidationError("effham.L: at least 2 sites required");
  if (num_sites > kMaxHeffSites) {
    throw ValidationError("effham.L: L > " + std::to_string(kMaxHeffSites) + " rejected (dense representation)");
  }
  if (coupling.size() != num_sites) throw ValidationError("effham.coupling: one value per link required");
  if (gamma.size() != num_sites) throw ValidationError("effham.gamma: one value per site required");
  for (double v : coupling) {
    if (!std::isfinite(v)) throw ValidationError("effham.coupling: non-finite value");
  }
  for (double v : gamma) {
    if (!std::isfinite(v) || v < 0.0) throw ValidationError("effham.gamma: values must be finite and >= 0");
  }
}

Eigen::MatrixXd build_heff(const HeffSpec& spec) {
  spec.validate();
  const std::size_t n = spec.num_sites;
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t s = 0; s < dim; ++s) {
    const auto col = static_cast<Eigen::Index>(s);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = (j + 1) % n;
      const int zj = ((s >> j) & 1u) ? -1 : 1;
      const int zk = ((s >> k) & 1u) ? -1 : 1;
      h(col, col) += spec.coupling[j] * (-0.4) * zj * zk;
      // Y|b> = i (-1)^b |1-b>, so YY picks up -(-1)^(b_j + b_k).
      const auto flipped = static_cast<Eigen::Index>(s ^ (std::size_t{1} << j) ^ (std::size_t{1} << k));
      h(flipped, col) += spec.coupling[j] * (-0.1) * (-(zj * zk));
      const auto xflip = static_cast<Eigen::Index>(s ^ (std::size_t{1} << j));
      h(xflip, col) += -(0.4 + 2.0 * spec.gamma[j]);
    }
  }
  return h;
}

PairCoefficients verify_hnn_coefficients() {
  const double cp = (std::sqrt(3.0) + 1.0) / std::sqrt(2.0);
  const double cm = (std::sqrt(3.0) - 1.0) / std::sqrt(2.0);
  const Eigen::Vector2d id(cp, cm), cross(cm, cp);
  Eigen::Vector4d ii, cc;
  for (int k = 0; k < 4; ++k) {
    ii(k) = id(k & 1) * id(k >> 1);
    cc(k) = cross(k & 1) * cross(k >> 1);
  }
  const Eigen::Matrix4d u = (ii * ii.transpose() + cc * cc.transpose()) / 15.0 -
                            (ii * cc.transpose() + cc * ii.transpose()) / 60.0;
  const Complex4 raw = u.cast<std::complex<double>>();
  const Complex4 xr = two_site_pauli('I', 'X');
  const Complex4 gauged = xr * raw * xr;

  PairCoefficients out;
  out.raw_zz = coefficient(raw, 'Z', 'Z');
  out.raw_yy = coefficient(raw, 'Y', 'Y');
  out.raw_x_left = coefficient(raw, 'X', 'I');
  out.raw_x_right = coefficient(raw, 'I', 'X');
  out.zz = coefficient(gauged, 'Z', 'Z');
  out.yy = coefficient(gauged, 'Y', 'Y');
  out.x = coefficient(gauged, 'X', 'I');
  out.identity = coefficient(gauged, 'I', 'I');
  const std::string labels = "IXYZ";
  for (char a : labels) {
    for (char b : labels) {
      const std::string ab{a, b};
      if (ab == "II" || ab == "ZZ" || ab == "YY" || ab == "XI" || ab == "IX") continue;
      out.max_other = std::max(out.max_other, std::abs(coefficient(gauged, a, b)));
    }
  }
  out.max_other = std::max(out.max_other, std::abs(out.x - coefficient(gauged, 'I', 'X')));
  return out;
}

Eigen::VectorXd identity_supervector(std::size_t num_sites) {
  if (num_sites == 0 || num_sites > kMaxHeffSites) throw ValidationError("effham.L: out of range");
  const double cp = (std::sqrt(3.0) + 1.0) / std::sqrt(2.0);
  const double cm = (std::sqrt(3.0) - 1.0) / std::sqrt(2.0);
  const std::size_t dim = std::size_t{1} << num_sites;
  Eigen::VectorXd v(static_cast<Eigen::Index>(dim));
  for (std::size_t s = 0; s < dim; ++s) {
    double a = 1.0;
    for (std::size_t j = 0; j < num_sites; ++j) a *= ((s >> j) & 1u) ? cm : cp;
    v(static_cast<Eigen::Index>(s)) = a;
  }
  return v;
}

GroundState ground_state(const Eigen::MatrixXd& h, double degeneracy_tolerance) {
  if (h.rows() == 0 || h.rows() != h.cols()) throw ValidationError("ground_state: square non-empty matrix required");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw RuntimeFailure("ground_state: eigensolver failed");
  const auto& vals = es.eigenvalues();
  GroundState gs;
  gs.energy = vals(0);
  gs.vector = es.eigenvectors().col(0);
  const double scale = std::max(1.0, std::abs(gs.energy));
  Eigen::Index k = 1;
  while (k < vals.size() && vals(k) - vals(0) <= degeneracy_tolerance * scale) ++k;
  gs.degenerate = k > 1;
  gs.space = es.eigenvectors().leftCols(k);
  if (vals.size() > 1) gs.first_excited = vals(1);
  gs.gap = gs.first_excited - gs.energy;
  return gs;
}

ImaginaryTimeResult imaginary_time_evolve(const Eigen::MatrixXd& h, const Eigen::VectorXd& v0, double dtau,
                                          std::size_t steps, std::size_t record_every) {
  if (h.rows() != v0.size()) throw ValidationError("imaginary_time_evolve: dimension mismatch");
  if (!(v0.norm() > 0.0) || !v0.allFinite()) throw ValidationError("imaginary_time_evolve: initial vector must be finite and nonzero");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw RuntimeFailure("imaginary_time_evolve: eigensolver failed");
  const Eigen::VectorXd& vals = es.eigenvalues();
  const double norm = vals.cwiseAbs().maxCoeff();
  if (!(dtau > 0.0) || !(dtau * norm < 1.0)) {
    throw ValidationError("imaginary_time_evolve: dtau must satisfy 0 < dtau < 1/||H||");
  }
  const Eigen::MatrixXd& vecs = es.eigenvectors();
  Eigen::VectorXd c = vecs.transpose() * (v0 / v0.norm());

  // Shifted by the ground energy so the weights stay bounded.
  const Eigen::ArrayXd decay = (-dtau * (vals.array() - vals(0))).exp();
  const double lead = std::abs(c(0));
  ImaginaryTimeResult out;
  out.ground_overlap = lead;
  out.zero_overlap = lead < 1e-12;

  auto energy = [&](const Eigen::VectorXd& coeffs) { return coeffs.cwiseAbs2().dot(vals) / coeffs.squaredNorm(); };
  out.energies.push_back(energy(c));
  if (record_every) out.snapshots.push_back(vecs * c);
  for (std::size_t s = 1; s <= steps; ++s) {
    c = (c.array() * decay).matrix();
    c /= c.norm();
    out.energies.push_back(energy(c));
    if (record_every && s % record_every == 0) out.snapshots.push_back(vecs * c);
  }
  out.final_state = vecs * c;
  out.final_state /= out.final_state.norm();
  return out;
}

std::vector<double> x_magnetization(const Eigen::VectorXd& state, std::size_t num_sites) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_sites);
  if (state.size() != dim) throw ValidationError("x_magnetization: dimension mismatch");
  std::vector<double> m(num_sites, 0.0);
  const double n2 = state.squaredNorm();
  for (std::size_t j = 0; j < num_sites; ++j) {
    double acc = 0.0;
    for (Eigen::Index s = 0; s < dim; ++s) acc += state(s) * state(s ^ static_cast<Eigen::Index>(std::size_t{1} << j));
    m[j] = acc / n2;
  }
  return m;
}

std::vector<EffhamRow> gamma_sweep(std::size_t num_sites, const std::vector<double>& gammas, double amplitude) {
  if (gammas.empty()) throw ValidationError("effham.gamma: empty sweep");
  const Eigen::VectorXd v0 = identity_supervector(num_sites);
  std::vector<EffhamRow> rows;
  for (double g : gammas) {
    const auto h = build_heff(HeffSpec::uniform(num_sites, g, amplitude));
    const auto gs = ground_state(h);
    EffhamRow row;
    row.gamma = g;
    row.energy = gs.energy;
    row.first_excited = gs.first_excited;
    row.gap = gs.gap;
    row.degenerate = gs.degenerate;
    Eigen::VectorXd proj = gs.space * (gs.space.transpose() * v0);
    if (proj.norm() < 1e-12) proj = gs.vector;
    row.magnetization = x_magnetization(proj / proj.norm(), num_sites);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace purify
