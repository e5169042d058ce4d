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

#include "oracle_harness.hpp"

#include <cmath>

#include "purify/observables.hpp"

namespace purify::oracle {

namespace {

void note(HarnessReport& r, const std::string& what) {
  if (r.first_failure.empty()) r.first_failure = what;
}

}  // namespace

HarnessReport run_matched_trajectory(std::size_t n, double p, std::size_t steps, std::uint64_t seed) {
  HarnessReport report;
  const auto& table = CliffordTable::instance();
  Rng rng(seed);
  MixedTableau t = MixedTableau::maximally_mixed(n);
  DenseState d(n);

  for (std::size_t time = 0; time < steps; ++time) {
    for (std::size_t j = (time % 2 == 0) ? 1 : 0; j < n; j += 2) {
      const auto& g = table.sample(rng);
      t.apply(g, j, (j + 1) % n);
      d.apply(g, j, (j + 1) % n);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!rng.bernoulli(p)) continue;
      const auto outcome = t.measure_z(i, rng);
      const double prob = d.measure(i, outcome.value);
      const double expected = outcome.kind == MeasurementKind::Deterministic ? 1.0 : 0.5;
      if (std::abs(prob - expected) > 1e-9) {
        ++report.probability_mismatches;
        note(report, "outcome probability at step " + std::to_string(time));
      }
    }

    ++report.steps_checked;
    const double dense_purity = d.purity();
    const double tab_purity = std::exp2(static_cast<double>(t.num_generators()) - static_cast<double>(n));
    const double perr = std::abs(dense_purity - tab_purity);
    report.max_purity_error = std::max(report.max_purity_error, perr);
    if (perr > 1e-10 || static_cast<double>(log_purity(t)) != std::round(-std::log2(dense_purity))) {
      ++report.purity_mismatches;
      note(report, "purity at step " + std::to_string(time));
    }
    if ((density_from_tableau(t) - d.rho()).norm() > 1e-9) {
      ++report.state_mismatches;
      note(report, "density matrix at step " + std::to_string(time));
    }
    for (std::size_t len = 1; len < n; ++len) {
      const Region a = Region::window(0, len, n);
      const double dense_neg = d.log_negativity(a);
      const auto tab_neg = static_cast<double>(negativity(t, a));
      const double nerr = std::abs(dense_neg - tab_neg);
      report.max_negativity_error = std::max(report.max_negativity_error, nerr);
      if (nerr > 1e-8) {
        ++report.negativity_mismatches;
        note(report, "negativity (l=" + std::to_string(len) + ") at step " + std::to_string(time));
      }
    }
  }
  return report;
}

}  // namespace purify::oracle
