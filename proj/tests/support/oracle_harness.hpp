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
#include <cstdint>
#include <string>

#include "dense_oracle.hpp"
#include "purify/circuit.hpp"

namespace purify::oracle {

struct HarnessReport {
  std::size_t steps_checked = 0;
  std::size_t purity_mismatches = 0;
  std::size_t negativity_mismatches = 0;
  std::size_t state_mismatches = 0;
  std::size_t probability_mismatches = 0;
  double max_purity_error = 0.0;
  double max_negativity_error = 0.0;
  std::string first_failure;

  bool ok() const {
    return purity_mismatches == 0 && negativity_mismatches == 0 && state_mismatches == 0 &&
           probability_mismatches == 0;
  }
};

/// Runs a Case I brickwork trajectory on both the tableau and the dense
/// simulator with identical gates and with the dense measurements forced to
/// the tableau outcomes; compares after every step.
HarnessReport run_matched_trajectory(std::size_t num_qubits, double p, std::size_t steps,
                                     std::uint64_t seed);

}  // namespace purify::oracle
