// Copyright 2026 The bbox6d Authors
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

#ifndef BBOX6D_GRADCHECK_HPP_
#define BBOX6D_GRADCHECK_HPP_

#include <cstdint>

namespace bbox6d {

/// Relative error used by the gradient checks: |a - n| / max(|a|, |n|), with
/// entries whose absolute error is at most `abs_floor` counted as matching.
struct GradTolerance {
  double relative = 1e-6;
  double abs_floor = 1e-8;
};

struct GradCheckReport {
  int trials = 0;
  double eps = 0.0;
  double max_rel_error_qnorm = 0.0;
  double max_rel_error_head = 0.0;
  int failures = 0;

  bool passed() const { return failures == 0; }
};

/// Compares QNormBackward and HeadBackward (with and without normalization)
/// against central finite differences of the forward losses on `trials`
/// seeded random instances.
GradCheckReport RunGradCheck(int trials, double eps, std::uint64_t seed = 7,
                             GradTolerance tol = {});

}  // namespace bbox6d

#endif  // BBOX6D_GRADCHECK_HPP_
