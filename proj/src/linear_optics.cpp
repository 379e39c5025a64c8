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

#include "cohloss/linear_optics.hpp"

#include <cmath>
#include <sstream>

namespace cohloss {

ModeUnitary ModeUnitary::create(int system_modes, int ancilla_modes, Mat s, double unitary_tol) {
  if (system_modes < 1 || ancilla_modes < 0)
    fail(Errc::argument, "ModeUnitary: need at least one system mode and a nonnegative ancilla count");
  const Eigen::Index n = system_modes + ancilla_modes;
  if (s.rows() != n || s.cols() != n)
    fail(Errc::argument, "ModeUnitary: S must be (K+J)x(K+J)");
  require_finite(s, "ModeUnitary");
  if (!is_unitary(s, unitary_tol)) fail(Errc::validation, "ModeUnitary: S is not unitary");
  return {system_modes, ancilla_modes, std::move(s)};
}

Mat ModeUnitary::s11() const { return s.topLeftCorner(system_modes, system_modes); }
Mat ModeUnitary::s12() const { return s.topRightCorner(system_modes, ancilla_modes); }
Mat ModeUnitary::s21() const { return s.bottomLeftCorner(ancilla_modes, system_modes); }
Mat ModeUnitary::s22() const { return s.bottomRightCorner(ancilla_modes, ancilla_modes); }

AncillaState AncillaState::create(int modes, Vec amplitudes, double norm_tol) {
  if (modes < 0) fail(Errc::argument, "AncillaState: negative mode count");
  const Eigen::Index dim = Eigen::Index(1) << modes;
  if (amplitudes.size() != dim)
    fail(Errc::argument, "AncillaState: amplitudes must have length 2^J");
  if (std::abs(amplitudes.norm() - 1.0) > norm_tol)
    fail(Errc::validation, "AncillaState: amplitudes are not normalized");
  return {modes, std::move(amplitudes)};
}

AncillaState AncillaState::vacuum(int modes) {
  Vec amps = Vec::Zero(Eigen::Index(1) << modes);
  amps(0) = 1.0;
  return {modes, std::move(amps)};
}

AncillaState AncillaState::single_photon(int modes, int mode) {
  if (mode < 1 || mode > modes) fail(Errc::argument, "AncillaState: mode index out of range");
  Vec amps = Vec::Zero(Eigen::Index(1) << modes);
  amps(Eigen::Index(1) << (modes - mode)) = 1.0;  // mode 1 most significant
  return {modes, std::move(amps)};
}

Mat mode_annihilator(int modes, int mode) {
  if (mode < 1 || mode > modes) fail(Errc::argument, "mode_annihilator: mode index out of range");
  Mat lower = Mat::Zero(2, 2);
  lower(0, 1) = 1.0;  // b|1> = |0> in the {0,1} truncation; bosonic, no sign strings
  Mat op = Mat::Identity(1, 1);
  for (int j = 1; j <= modes; ++j)
    op = tensor(op, j == mode ? lower : Mat::Identity(2, 2));
  return op;
}

ModeUnitary beam_splitter(double theta) {
  Mat s(2, 2);
  s << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return ModeUnitary::create(1, 1, std::move(s));
}

VacuumTestResult vacuum_preservation_test(const ModeUnitary& mu, const AncillaState& eta,
                                          double sv_tol, double kill_tol) {
  if (eta.modes != mu.ancilla_modes)
    fail(Errc::argument, "vacuum_preservation_test: ancilla mode count mismatch");
  VacuumTestResult result;
  result.passed = true;
  if (mu.ancilla_modes == 0) return result;

  const SvdResult dec = svd(mu.s12());
  for (Eigen::Index k = 0; k < dec.singular_values.size(); ++k) {
    if (dec.singular_values(k) <= sv_tol) continue;
    // b_bar_k = sum_j conj(W(j,k)) b_j on the truncated Fock space.
    Mat b_bar = Mat::Zero(eta.amplitudes.size(), eta.amplitudes.size());
    for (int j = 1; j <= mu.ancilla_modes; ++j)
      b_bar += std::conj(dec.w(j - 1, k)) * mode_annihilator(mu.ancilla_modes, j);
    if ((b_bar * eta.amplitudes).norm() > kill_tol) {
      result.passed = false;
      result.offending_modes.push_back(static_cast<int>(k) + 1);
    }
  }
  return result;
}

KrausChannel induced_channel(const ModeUnitary& mu, const AncillaState& eta) {
  const VacuumTestResult test = vacuum_preservation_test(mu, eta);
  if (!test.passed) {
    std::ostringstream os;
    os << "induced_channel: vacuum preservation test failed for rotated ancilla mode(s)";
    for (int m : test.offending_modes) os << " " << m;
    fail(Errc::vacuum_test, os.str());
  }
  // Once the test passes, the channel on the vacuum (+) single-particle sector
  // depends only on the S11 block.
  return from_contraction(mu.s11());
}

KrausChannel from_contraction(const Mat& s_op, double tol) {
  if (s_op.rows() != s_op.cols() || s_op.rows() < 1)
    fail(Errc::argument, "from_contraction: operator must be square");
  require_finite(s_op, "from_contraction");
  const double norm = operator_norm(s_op);
  if (norm > 1.0 + tol) {
    std::ostringstream os;
    os << "from_contraction: largest singular value " << norm
       << " exceeds 1; the channel would not be completely positive";
    fail(Errc::validation, os.str());
  }

  const Eigen::Index k = s_op.rows();
  const Eigen::Index dim = 1 + k;

  // First Kraus operator: identity on the vacuum plus S on the
  // single-particle block; it reproduces the S rho S† and cross terms.
  Mat principal = Mat::Zero(dim, dim);
  principal(0, 0) = 1.0;
  principal.block(1, 1, k, k) = s_op;

  // The remaining loss term |0><0| Tr[(1 - S†S) rho] comes from the spectral
  // decomposition of 1 - S†S on the single-particle block.
  Mat defect = Mat::Identity(k, k) - s_op.adjoint() * s_op;
  const Eigensystem eig = hermitian_eigensystem((defect + defect.adjoint()).eval() / 2.0, 1e-9);

  std::vector<Mat> ops{principal};
  for (Eigen::Index i = 0; i < k; ++i) {
    double lambda = eig.values(i);
    if (lambda < -1e-10)
      fail(Errc::validation, "from_contraction: 1 - S†S has a negative eigenvalue");
    if (lambda <= 1e-12) continue;
    Mat k_op = Mat::Zero(dim, dim);
    k_op.row(0).segment(1, k) = std::sqrt(lambda) * eig.vectors.col(i).adjoint();
    ops.push_back(std::move(k_op));
  }
  return KrausChannel::create(dim, std::move(ops));
}

KrausChannel convex_mixture(const std::vector<KrausChannel>& channels,
                            const std::vector<double>& weights) {
  if (channels.empty()) fail(Errc::argument, "convex_mixture: no channels");
  if (channels.size() != weights.size())
    fail(Errc::argument, "convex_mixture: weight count mismatch");
  const Eigen::Index dim = channels.front().dim;
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) fail(Errc::argument, "convex_mixture: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    fail(Errc::argument, "convex_mixture: weights must sum to 1");

  std::vector<Mat> ops;
  for (size_t c = 0; c < channels.size(); ++c) {
    if (channels[c].dim != dim) fail(Errc::argument, "convex_mixture: channel dimension mismatch");
    if (weights[c] == 0.0) continue;
    const double scale = std::sqrt(weights[c]);
    for (const Mat& k : channels[c].kraus) ops.push_back(scale * k);
  }
  return KrausChannel::create(dim, std::move(ops));
}

}  // namespace cohloss
