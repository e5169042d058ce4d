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

#include "synthetic.hpp"

#include <cmath>
#include <numbers>

#include "purify/rng.hpp"

namespace purify::fixtures {

namespace {

double gaussian(Rng& rng) {
  const double u1 = 1.0 - rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

ScalingDataset purity_dataset(const PuritySpec& spec) {
  Rng rng(spec.seed);
  std::vector<ScalingRow> rows;
  const double l = static_cast<double>(spec.size);
  for (int k = 2; k <= 30; ++k) {
    const double p = 0.01 * k;
    const double clean = p < spec.p_c ? l * spec.amplitude * std::pow(spec.p_c - p, spec.nu) : 0.0;
    const double sd = std::max(spec.noise * clean, 1e-4 * l);
    rows.push_back({spec.size, p, clean + sd * gaussian(rng), sd});
  }
  return ScalingDataset(std::move(rows));
}

ScalingDataset collapse_dataset(const CollapseSpec& spec) {
  Rng rng(spec.seed);
  std::vector<ScalingRow> rows;
  for (auto size : spec.sizes) {
    const double l = static_cast<double>(size);
    for (int k = 0; k <= 12; ++k) {
      const double p = 0.10 + 0.01 * k;
      const double x = std::pow(l, 1.0 / spec.nu) * (p - spec.p_c);
      const double clean = 3.0 + std::pow(l, spec.zeta / spec.nu) * 2.0 * (std::exp(-x) - 1.0);
      const double sd = spec.noise * (std::abs(clean) + 0.5);
      rows.push_back({size, p, clean + (spec.perturb ? sd * gaussian(rng) : 0.0), sd});
    }
  }
  return ScalingDataset(std::move(rows));
}

}  // namespace purify::fixtures
