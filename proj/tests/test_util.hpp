// Copyright 2026 The cohloss authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>

#include "cohloss/matrix.hpp"

namespace cohloss::test {

inline double max_abs_diff(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return 1e300;
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

inline Mat matrix_unit(Eigen::Index dim, Eigen::Index i, Eigen::Index j) {
  Mat e = Mat::Zero(dim, dim);
  e(i, j) = 1.0;
  return e;
}

inline Vec basis_vector(Eigen::Index dim, Eigen::Index i) {
  Vec v = Vec::Zero(dim);
  v(i) = 1.0;
  return v;
}

// Independent oracle for the off-resonant vacuum Rabi oscillation: survival
// probability of the photon after time t at detuning delta and coupling g.
inline double rabi_survival(double delta, double g, double t) {
  const double omega = std::sqrt(delta * delta + 4.0 * g * g);
  const double weight = 4.0 * g * g / (delta * delta + 4.0 * g * g);
  const double s = std::sin(t * omega / 2.0);
  return 1.0 - weight * s * s;
}

}  // namespace cohloss::test
