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

#include <cstddef>
#include <functional>
#include <vector>

namespace purify {

struct NelderMeadOptions {
  std::size_t max_evaluations = 4000;
  double f_tolerance = 1e-10;  // absolute spread of simplex values
  double x_tolerance = 1e-7;   // simplex size in units of the initial step
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Downhill simplex with the standard reflection, expansion, contraction
/// and shrink coefficients (1, 2, 1/2, 1/2). Non-finite values are treated
/// as +inf, so infeasible regions may be encoded that way.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, std::vector<double> step,
                             const NelderMeadOptions& options = {});

}  // namespace purify
