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

#include <vector>

#include "cohloss/channel.hpp"
#include "cohloss/matrix.hpp"

namespace cohloss {

// A particle-number-conserving mode transformation on K system modes and J
// ancilla modes, described by a (K+J)x(K+J) unitary matrix.
struct ModeUnitary {
  int system_modes = 0;   // K
  int ancilla_modes = 0;  // J
  Mat s;                  // (K+J)x(K+J)

  static ModeUnitary create(int system_modes, int ancilla_modes, Mat s,
                            double unitary_tol = kStructuralTol);

  Mat s11() const;  // K x K
  Mat s12() const;  // K x J
  Mat s21() const;  // J x K
  Mat s22() const;  // J x J
};

// Pure ancilla state in the per-mode {0,1} Fock truncation; amplitudes over
// the 2^J occupation basis in lexicographic order, mode 1 most significant.
struct AncillaState {
  int modes = 0;   // J
  Vec amplitudes;  // length 2^J, unit norm

  static AncillaState create(int modes, Vec amplitudes, double norm_tol = kStructuralTol);
  static AncillaState vacuum(int modes);
  static AncillaState single_photon(int modes, int mode);  // one photon in the given mode (1-based)
};

/// Lowering operator for the given mode (1-based) on the 2^J truncated space.
Mat mode_annihilator(int modes, int mode);

/// S = [[cos, sin], [-sin, cos]]: a beam splitter with transmissivity cos^2(theta),
/// one system and one ancilla mode.
ModeUnitary beam_splitter(double theta);

struct VacuumTestResult {
  bool passed = false;
  std::vector<int> offending_modes;  // 1-based indices of the rotated ancilla modes
};

/// SVD-based test: with S12 = V D W† and b_bar = W† b, every mode with a
/// nonzero singular value must annihilate the ancilla state.
VacuumTestResult vacuum_preservation_test(const ModeUnitary& mu, const AncillaState& eta,
                                          double sv_tol = 1e-10, double kill_tol = 1e-10);

/// Channel induced on the vacuum (+) K single-particle states:
///   Phi(rho) = |0><0| Tr[(1 - S†S) rho] + S rho S† + S rho |0><0| + |0><0| rho S†
/// with S the single-particle embedding of S11. Requires the vacuum test.
KrausChannel induced_channel(const ModeUnitary& mu, const AncillaState& eta);

/// The same channel built directly from an arbitrary single-particle
/// contraction (largest singular value <= 1 + tol, else Errc::validation).
KrausChannel from_contraction(const Mat& s_op, double tol = 1e-12);

/// Kraus form of sum_i w_i Phi_i (concatenated sqrt(w)-scaled Kraus lists).
KrausChannel convex_mixture(const std::vector<KrausChannel>& channels,
                            const std::vector<double>& weights);

}  // namespace cohloss
