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

#include <variant>
#include <vector>

#include "cohloss/channel.hpp"
#include "cohloss/matrix.hpp"

namespace cohloss {

enum class DissipatorKind { none, relaxation, dephasing };

// Photon mode + two-level atom. Energies in units of the reference energy,
// times in inverse reference energy.
struct JcConfig {
  double omega = 1.0;    // photon energy
  double omega_a = 1.0;  // atomic excitation energy
  double g = 0.1;        // coupling
  double q = 0.0;        // dissipator strength, >= 0
  DissipatorKind dissipator = DissipatorKind::none;

  void validate() const;
};

// Photon mode + three-level atom (no dissipator).
struct ThreeLevelConfig {
  double omega = 1.0;
  double omega0 = 5.0, omega1 = 7.0, omega2 = 8.0;
  double g01 = 0.05, g02 = 0.07, g12 = 0.08;

  void validate() const;
};

using ModelConfig = std::variant<JcConfig, ThreeLevelConfig>;

/// 4x4 on {|0g>,|0e>,|1g>,|1e>}, photon factor first,
/// sigma_z |occupied/excited> = +|occupied/excited> on both factors.
Mat jc_hamiltonian(const JcConfig& cfg);

/// 6x6 on {|0>,|1>}_photon (x) {|0>,|1>,|2>}_atom; couplings connect
/// |1,k'> <-> |0,k> for k > k'.
Mat three_level_hamiltonian(const ThreeLevelConfig& cfg);

Mat model_hamiltonian(const ModelConfig& model);
double model_q(const ModelConfig& model);
DissipatorKind model_dissipator(const ModelConfig& model);
Eigen::Index model_atom_dim(const ModelConfig& model);

/// -i[H, rho] + q Q(rho) on a photon(2) (x) atom(n/2) space. The relaxation
/// dissipator is L rho L† - (1/2){L†L, rho} with L = 1 (x) |0><1| and the
/// dephasing dissipator is -(1/4)[sz_a, [sz_a, rho]]; both require a
/// two-level atom factor.
Mat lindblad_rhs(const Mat& h, double q, DissipatorKind dissipator, const Mat& rho);

struct EvolutionResult {
  std::vector<double> times;
  std::vector<Mat> states;
  double trace_drift = 0.0;  // max |tr rho(t) - 1| observed
};

/// Fixed-step classical RK4 with Hermitian symmetrization each step; a last
/// partial step lands exactly on t_final. snapshot_interval > 0 records the
/// state at every multiple (plus t = 0 and t_final); otherwise only the
/// endpoints are kept. Aborts with a step-size diagnostic if the trace
/// drifts beyond 1e-6.
EvolutionResult evolve(const Mat& h, double q, DissipatorKind dissipator, const Mat& rho0,
                       double t_final, double dt, double snapshot_interval = 0.0);

/// Exact q = 0 evolution e^{-iHt} rho0 e^{iHt} via eigendecomposition; the
/// reference path the integrator is checked against.
Mat evolve_exact(const Mat& h, const Mat& rho0, double t);

struct FieldChannelExtraction {
  LossChannelParams params;
  double survival_probability = 0.0;  // tr[(|1><1| (x) 1) rho(t)] from the |1><1| input
  double vacuum_deviation = 0.0;      // max-entry |Phi(|0><0|) - |0><0||
};

/// Process tomography of the field channel: atom starts in its ground state,
/// inputs {|0><0|, |1><1|, |+><+|, |+i><+i|} on the field, joint evolution to
/// time t, partial trace over the atom, linear inversion. Validates channel
/// consistency (signals integrator error) and vacuum preservation (signals
/// model construction error).
FieldChannelExtraction extract_field_channel(const ModelConfig& model, double t, double dt);

}  // namespace cohloss
