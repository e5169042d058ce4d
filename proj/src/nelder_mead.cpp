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

#include "purify/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "purify/error.hpp"

namespace purify {

namespace {

double sanitize(double v) {
  return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, std::vector<double> step,
                             const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0) throw ValidationError("nelder_mead: empty parameter vector");
  if (step.size() != n) throw ValidationError("nelder_mead: step size mismatch");
  for (double s : step) {
    if (!(s != 0.0) || !std::isfinite(s)) throw ValidationError("nelder_mead: steps must be finite and nonzero");
  }

  NelderMeadResult result;
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    return sanitize(f(x));
  };

  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> values(n + 1);
  for (std::size_t k = 0; k < n; ++k) simplex[k + 1][k] += step[k];
  for (std::size_t k = 0; k <= n; ++k) values[k] = eval(simplex[k]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);

  auto point_along = [&](const std::vector<double>& worst, double coeff, std::vector<double>& out) {
    for (std::size_t d = 0; d < n; ++d) out[d] = centroid[d] + coeff * (worst[d] - centroid[d]);
  };

  while (true) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];

    double spread = values[worst] - values[best];
    if (!std::isfinite(values[worst])) spread = std::numeric_limits<double>::infinity();
    double size = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      for (std::size_t d = 0; d < n; ++d) {
        size = std::max(size, std::abs(simplex[k][d] - simplex[best][d]) / std::abs(step[d]));
      }
    }
    if (std::isfinite(values[best]) && spread <= options.f_tolerance && size <= options.x_tolerance) {
      result.converged = true;
      break;
    }
    if (result.evaluations >= options.max_evaluations) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == worst) continue;
      for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[k][d] / static_cast<double>(n);
    }

    point_along(simplex[worst], -1.0, trial);
    const double fr = eval(trial);
    if (fr < values[best]) {
      point_along(simplex[worst], -2.0, trial2);
      const double fe = eval(trial2);
      if (fe < fr) {
        simplex[worst] = trial2;
        values[worst] = fe;
      } else {
        simplex[worst] = trial;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = trial;
      values[worst] = fr;
      continue;
    }
    // Outside contraction when the reflection beats the worst, inside otherwise.
    const bool outside = fr < values[worst];
    point_along(simplex[worst], outside ? -0.5 : 0.5, trial2);
    const double fc = eval(trial2);
    if (outside ? fc <= fr : fc < values[worst]) {
      simplex[worst] = trial2;
      values[worst] = fc;
      continue;
    }
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == best) continue;
      for (std::size_t d = 0; d < n; ++d) simplex[k][d] = simplex[best][d] + 0.5 * (simplex[k][d] - simplex[best][d]);
      values[k] = eval(simplex[k]);
    }
  }

  const auto it = std::min_element(values.begin(), values.end());
  result.x = simplex[static_cast<std::size_t>(it - values.begin())];
  result.value = *it;
  return result;
}

}  // namespace purify
