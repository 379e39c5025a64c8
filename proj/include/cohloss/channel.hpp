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

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cohloss/matrix.hpp"

namespace cohloss {

// A trace-preserving completely positive map on the (1+d)-dimensional
// vacuum (+) single-particle space, index 0 = vacuum.
struct KrausChannel {
  Eigen::Index dim = 0;
  std::vector<Mat> kraus;

  /// Validates dimensions and trace preservation (sum K†K == I to tp_tol).
  static KrausChannel create(Eigen::Index dim, std::vector<Mat> ops, double tp_tol = kStructuralTol);

  static KrausChannel identity(Eigen::Index dim);
};

// The (sigma, gamma) parametrization of a vacuum-preserving channel on a
// single mode without internal degree of freedom:
//   Phi(rho) = |0><0| rho00 + sigma rho11 + gamma |0><1| rho01 + conj(gamma) |1><0| rho10
struct LossChannelParams {
  Mat sigma;          // 2x2 density operator
  Cplx gamma = 0.0;

  /// Throws Errc::validation naming the violated constraint:
  /// sigma a density operator, |gamma| <= 1,
  /// sigma00 |gamma|^2 + |sigma01|^2 <= sigma00 (1 - sigma00) + slack.
  void validate(double tol = 1e-9, double ineq_slack = 1e-12) const;

  double sigma00() const { return sigma(0, 0).real(); }
  Cplx sigma01() const { return sigma(0, 1); }
  double excess_coherence_loss() const { return 1.0 - sigma00() - std::norm(gamma); }
};

struct LpcReport {
  double loss = 0.0;          // L in [0,1]
  double preservation = 0.0;  // P in [0,1]
  double creation = 0.0;      // C in [0,1]
  std::optional<double> excess_coherence_loss;  // 1 - sigma00 - |gamma|^2, dim-2 channels only
  double inequality_slack = 0.0;                // L(1-L) - L P^2 - C^2
};

/// Sum_i K x K†. x need not be Hermitian; the preservation functional is
/// defined through the channel's action on |psi><0|.
Mat apply_channel(const KrausChannel& ch, const Mat& x);

/// (I (x) Phi)(|Omega><Omega|), |Omega> = sum_i |ii> unnormalized. PSD iff
/// the map is completely positive; partial trace over the output factor is I.
Mat choi_matrix(const KrausChannel& ch);

double vacuum_preservation_deviation(const KrausChannel& ch);
bool is_vacuum_preserving(const KrausChannel& ch, double tol = 1e-9);

/// Kraus form of a linear map given by its action, via eigendecomposition of
/// the Choi matrix. Eigenvalues below -psd_tol report a CP violation.
KrausChannel kraus_from_action(Eigen::Index dim, const std::function<Mat(const Mat&)>& action,
                               double psd_tol = 1e-10);

/// Explicit single-mode loss channel from its (sigma, gamma) parameters.
KrausChannel from_loss_params(const LossChannelParams& p);

/// Inverse of from_loss_params for any dim-2 vacuum-preserving channel:
/// sigma = Phi(|1><1|), gamma = <0|Phi(|0><1|)|1>.
LossChannelParams loss_params_from_channel(const KrausChannel& ch, double validate_tol = 1e-6);

/// The three functionals and the exclusion-inequality slack for a normalized
/// psi_perp orthogonal to the vacuum.
LpcReport lpc(const KrausChannel& ch, const Vec& psi_perp, double vac_tol = 1e-9);

/// L P^2 + C^2 <= L (1 - L) + slack_tol, plus the zero-loss corollary
/// (L <= zero_loss_tol implies C <= zero_creation_tol).
bool check_exclusion_inequality(const LpcReport& report, double slack_tol = 1e-9,
                                double zero_loss_tol = 1e-9, double zero_creation_tol = 1e-4);

/// Stinespring-style random channel: Tr_a(U rho (x) |a><a| U†) with U a seeded
/// Haar-like unitary on (1+d)*anc dimensions constrained to U|0,a> = |0,a0>.
KrausChannel random_vacuum_preserving_channel(int d, int anc, std::uint64_t seed);

/// Two-path Mach-Zehnder: 50/50 splitter, channel on path A, (u_internal,
/// phase e^{i chi}) on path B, re-interference, detection probability in A.
/// u_internal is (dim-1) x (dim-1) on the internal single-particle space.
double simulate_mach_zehnder(const KrausChannel& ch, const Vec& psi_perp, const Mat& u_internal,
                             double chi);

/// Internal unitary with U psi parallel to P_perp Phi(|psi><0|)|0>, which
/// maximizes the fringe visibility.
Mat analytic_visibility_maximizer(const KrausChannel& ch, const Vec& psi_perp);

struct VisibilityScan {
  double visibility = 0.0;  // peak-to-peak fringe amplitude / 2 for the best unitary
  Mat unitary;
  double best_chi = 0.0;    // fringe maximum location in [0, 2 pi)
  double offset = 0.0;      // fringe mean, equals 1/2 - L/4
};

/// Scans n_unitaries seeded random internal unitaries (plus the analytic
/// maximizer when include_analytic) over an n_chi fringe grid with local
/// refinement of the extrema.
VisibilityScan max_visibility_scan(const KrausChannel& ch, const Vec& psi_perp, int n_unitaries,
                                   int n_chi, std::uint64_t seed = 0, bool include_analytic = true);

}  // namespace cohloss
