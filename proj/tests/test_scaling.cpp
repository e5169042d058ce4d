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

#include "purify/error.hpp"
#include "purify/nelder_mead.hpp"
#include "purify/scaling.hpp"
#include "synthetic.hpp"

using namespace purify;

TEST_CASE("nelder_mead on the Rosenbrock valley") {
  auto rosen = [](const std::vector<double>& v) {
    return 100.0 * std::pow(v[1] - v[0] * v[0], 2) + std::pow(1.0 - v[0], 2);
  };
  NelderMeadOptions opt;
  opt.max_evaluations = 20000;
  opt.f_tolerance = 1e-16;
  opt.x_tolerance = 1e-9;
  const auto r = nelder_mead(rosen, {-1.2, 1.0}, {0.1, 0.1}, opt);
  CHECK(r.converged);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("nelder_mead respects infeasible regions and budgets") {
  auto f = [](const std::vector<double>& v) {
    return v[0] < 0.5 ? std::nan("") : (v[0] - 0.5) * (v[0] - 0.5) + 1.0;
  };
  const auto r = nelder_mead(f, {2.0}, {0.3});
  CHECK(r.x[0] >= 0.5);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));

  NelderMeadOptions tight;
  tight.max_evaluations = 10;
  const auto cut = nelder_mead([](const std::vector<double>& v) { return v[0] * v[0] + v[1] * v[1]; },
                               {3.0, 4.0}, {1.0, 1.0}, tight);
  CHECK_FALSE(cut.converged);
  CHECK(cut.evaluations <= 12);
  CHECK_THROWS_AS(nelder_mead([](const std::vector<double>&) { return 0.0; }, {1.0}, {0.0}), ValidationError);
}

TEST_CASE("ScalingDataset validation") {
  CHECK_THROWS_AS(ScalingDataset({{16, 0.2, 1.0, 0.1}, {16, 0.2, 1.0, 0.1}}), ValidationError);
  CHECK_THROWS_AS(ScalingDataset({{16, 0.2, 1.0, -0.1}}), ValidationError);
  const ScalingDataset d({{32, 0.2, 1.0, 0.1}, {16, 0.3, 1.0, 0.1}, {16, 0.1, 1.0, 0.1}});
  CHECK(d.sizes() == std::vector<std::size_t>{16, 32});
  CHECK(d.rows_for(16).front().p == 0.1);
}

TEST_CASE("powerlaw_fit") {
  const std::vector<double> l{16, 32, 48, 64, 96};
  std::vector<double> y;
  for (double v : l) y.push_back(2.0 * std::sqrt(v));
  const auto fit = powerlaw_fit(l, y);
  CHECK(std::abs(fit.amplitude - 2.0) < 1e-12);
  CHECK(std::abs(fit.exponent - 0.5) < 1e-12);
  CHECK(fit.exponent_error < 1e-12);

  std::vector<double> noisy{4.1, 5.3, 6.6, 7.2, 9.0};
  const auto nf = powerlaw_fit(l, noisy);
  CHECK(nf.exponent_error > 0.0);
  CHECK(nf.amplitude_error > 0.0);

  const std::vector<double> bad{1.0, 0.0, 2.0};
  CHECK_THROWS_AS(powerlaw_fit(std::vector<double>{1, 2, 3}, bad), ValidationError);
  CHECK_THROWS_AS(powerlaw_fit(std::vector<double>{1, 2}, std::vector<double>{1, 2}), ValidationError);
}

TEST_CASE("purity_transition_fit recovers planted parameters") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    fixtures::PuritySpec spec;
    spec.seed = seed;
    const auto fit = purity_transition_fit(fixtures::purity_dataset(spec));
    CHECK_FALSE(fit.flagged);
    CHECK(std::abs(fit.amplitude - 1.0) < 0.05);
    CHECK(std::abs(fit.p_c - 0.16) < 0.05 * 0.16);
    CHECK(std::abs(fit.nu - 1.22) < 0.05 * 1.22);
    CHECK(fit.p_c_error > 0.0);
    CHECK(fit.nu_error > 0.0);
    CHECK(fit.points_used >= 5);
  }
  CHECK_THROWS_AS(purity_transition_fit(ScalingDataset({{16, 0.1, 1, 0.1}, {16, 0.2, 1, 0.1}})), ValidationError);
}

TEST_CASE("collapse_quality") {
  fixtures::CollapseSpec spec;
  spec.perturb = false;
  spec.zeta = 0.0;
  const auto exact = fixtures::collapse_dataset(spec);
  CHECK(collapse_quality(exact, spec.p_c, spec.nu, spec.zeta) <= 1.0 + 0.05);
  spec = fixtures::CollapseSpec{};

  const auto noisy = fixtures::collapse_dataset(fixtures::CollapseSpec{});
  const double at_truth = collapse_quality(noisy, spec.p_c, spec.nu, spec.zeta);
  CHECK(collapse_quality(noisy, spec.p_c, 1.5 * spec.nu, spec.zeta) > at_truth);

  // Relabeling sizes and rescaling all stderr leave the argmin unchanged.
  std::vector<ScalingRow> scaled;
  for (auto r : noisy.rows()) {
    r.std_error *= 3.0;
    scaled.push_back(r);
  }
  const ScalingDataset scaled_set(scaled);
  CHECK(collapse_quality(scaled_set, spec.p_c, spec.nu, spec.zeta) == doctest::Approx(at_truth / 9.0));

  CHECK_THROWS_AS(collapse_quality(ScalingDataset(noisy.rows_for(16)), 0.16, 1.3, 0.0), ValidationError);
  CHECK_THROWS_AS(collapse_quality(noisy, 0.5, 1.3, 0.0), ValidationError);
  CHECK_THROWS_AS(collapse_quality(noisy, 0.16, 11.0, 0.0), ValidationError);
  CHECK_THROWS_AS(collapse_quality(noisy, 0.16, 1.3, 3.5), ValidationError);
}

TEST_CASE("collapse recovers planted exponents within quoted uncertainties") {
  const fixtures::CollapseSpec spec;
  const auto data = fixtures::collapse_dataset(spec);
  const auto r = collapse(data, {0.15, 1.2, 0.1});
  CHECK_FALSE(r.flagged);
  MESSAGE("p_c=" << r.p_c << "+-" << r.p_c_error << " nu=" << r.nu << "+-" << r.nu_error << " zeta=" << r.zeta
                 << "+-" << r.zeta_error << " S=" << r.quality);
  CHECK(std::abs(r.p_c - spec.p_c) <= r.p_c_error);
  CHECK(std::abs(r.nu - spec.nu) <= r.nu_error);
  CHECK(std::abs(r.zeta - spec.zeta) <= r.zeta_error);

  // Argmin invariance under uniform stderr rescaling.
  std::vector<ScalingRow> scaled;
  for (auto row : data.rows()) {
    row.std_error *= 2.0;
    scaled.push_back(row);
  }
  const auto r2 = collapse(ScalingDataset(scaled), {0.15, 1.2, 0.1});
  CHECK(r2.p_c == doctest::Approx(r.p_c).epsilon(1e-3));
  CHECK(r2.nu == doctest::Approx(r.nu).epsilon(1e-3));
}

TEST_CASE("collapse input errors and the flat-landscape flag") {
  fixtures::CollapseSpec two;
  two.sizes = {16, 32};
  try {
    collapse(fixtures::collapse_dataset(two));
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()) == "collapse: ≥3 sizes required (got 2)");
  }

  // Pure noise with huge error bars carries no information about p_c or nu.
  std::vector<ScalingRow> flat;
  for (std::size_t l : {16u, 32u, 64u}) {
    for (int k = 0; k <= 10; ++k) flat.push_back({l, 0.1 + 0.01 * k, 1.0 + 0.01 * ((k * 7 + l) % 3), 5.0});
  }
  const auto r = collapse(ScalingDataset(flat), {0.15, 1.5, 0.0});
  CHECK(r.flagged);

  // Three sizes with 2% error bars leave zeta free up to its range limit.
  fixtures::CollapseSpec loose;
  loose.sizes = {16, 32, 64};
  loose.noise = 0.02;
  const auto rl = collapse(fixtures::collapse_dataset(loose));
  CHECK(rl.flagged);
  CHECK(rl.flag_reason == "unconstrained along zeta");
}

TEST_CASE("collapsed coordinates") {
  const auto data = fixtures::collapse_dataset(fixtures::CollapseSpec{});
  const auto pts = collapsed_coordinates(data, 0.16, 4.0 / 3.0, 0.3);
  CHECK(pts.size() == data.rows().size());
  for (const auto& pt : pts) CHECK(pt.dy > 0.0);
}
