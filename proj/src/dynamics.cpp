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

#include "cohloss/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace cohloss {

namespace {

const Cplx kI(0.0, 1.0);

Mat sigma_z() {
  Mat sz = Mat::Zero(2, 2);
  sz(0, 0) = -1.0;  // unoccupied / ground
  sz(1, 1) = 1.0;   // occupied / excited
  return sz;
}

}  // namespace

void JcConfig::validate() const {
  if (g < 0.0) fail(Errc::validation, "JcConfig: coupling g must be >= 0");
  if (q < 0.0) fail(Errc::validation, "JcConfig: dissipator strength q must be >= 0");
  if (!std::isfinite(omega) || !std::isfinite(omega_a) || !std::isfinite(g) || !std::isfinite(q))
    fail(Errc::validation, "JcConfig: non-finite parameter");
}

void ThreeLevelConfig::validate() const {
  for (double v : {omega, omega0, omega1, omega2, g01, g02, g12})
    if (!std::isfinite(v)) fail(Errc::validation, "ThreeLevelConfig: non-finite parameter");
  if (g01 < 0.0 || g02 < 0.0 || g12 < 0.0)
    fail(Errc::validation, "ThreeLevelConfig: couplings must be >= 0");
}

Mat jc_hamiltonian(const JcConfig& cfg) {
  cfg.validate();
  const Mat sz = sigma_z();
  const Mat eye2 = Mat::Identity(2, 2);
  Mat h = cfg.omega / 2.0 * tensor(sz, eye2) + cfg.omega_a / 2.0 * tensor(eye2, sz);
  // g (|01><10| + |10><01|) on the {photon, atom} product basis.
  h(1, 2) += cfg.g;  // |0e><1g|
  h(2, 1) += cfg.g;
  return h;
}

Mat three_level_hamiltonian(const ThreeLevelConfig& cfg) {
  cfg.validate();
  const Mat sz = sigma_z();
  Mat atom = Mat::Zero(3, 3);
  atom(0, 0) = cfg.omega0;
  atom(1, 1) = cfg.omega1;
  atom(2, 2) = cfg.omega2;
  Mat h = cfg.omega / 2.0 * tensor(sz, Mat::Identity(3, 3)) + tensor(Mat::Identity(2, 2), atom);

  // sigma_- (x) |k><k'| + sigma_+ (x) |k'><k| for k > k'; flat index p*3 + k.
  auto couple = [&h](int k, int kp, double g) {
    h(0 * 3 + k, 1 * 3 + kp) += g;  // |0,k><1,k'|
    h(1 * 3 + kp, 0 * 3 + k) += g;
  };
  couple(1, 0, cfg.g01);
  couple(2, 0, cfg.g02);
  couple(2, 1, cfg.g12);
  return h;
}

Mat model_hamiltonian(const ModelConfig& model) {
  if (std::holds_alternative<JcConfig>(model)) return jc_hamiltonian(std::get<JcConfig>(model));
  return three_level_hamiltonian(std::get<ThreeLevelConfig>(model));
}

double model_q(const ModelConfig& model) {
  return std::holds_alternative<JcConfig>(model) ? std::get<JcConfig>(model).q : 0.0;
}

DissipatorKind model_dissipator(const ModelConfig& model) {
  return std::holds_alternative<JcConfig>(model) ? std::get<JcConfig>(model).dissipator
                                                 : DissipatorKind::none;
}

Eigen::Index model_atom_dim(const ModelConfig& model) {
  return std::holds_alternative<JcConfig>(model) ? 2 : 3;
}

Mat lindblad_rhs(const Mat& h, double q, DissipatorKind dissipator, const Mat& rho) {
  if (h.rows() != rho.rows() || h.cols() != rho.cols() || rho.rows() != rho.cols())
    fail(Errc::argument, "lindblad_rhs: dimension mismatch");
  Mat out = -kI * (h * rho - rho * h);
  if (q == 0.0 || dissipator == DissipatorKind::none) return out;

  const Eigen::Index atom_dim = rho.rows() / 2;
  if (atom_dim * 2 != rho.rows() || atom_dim != 2)
    fail(Errc::argument, "lindblad_rhs: dissipators require a photon(2) x atom(2) space");
  const Mat eye2 = Mat::Identity(2, 2);

  if (dissipator == DissipatorKind::relaxation) {
    Mat lower = Mat::Zero(2, 2);
    lower(0, 1) = 1.0;  // |g><e|
    const Mat l = tensor(eye2, lower);
    const Mat ldl = l.adjoint() * l;
    out += q * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
  } else {
    const Mat sza = tensor(eye2, sigma_z());
    const Mat inner = sza * rho - rho * sza;
    out += q * (-0.25) * (sza * inner - inner * sza);
  }
  return out;
}

EvolutionResult evolve(const Mat& h, double q, DissipatorKind dissipator, const Mat& rho0,
                       double t_final, double dt, double snapshot_interval) {
  if (dt <= 0.0) fail(Errc::argument, "evolve: dt must be positive");
  if (t_final < 0.0) fail(Errc::argument, "evolve: t_final must be >= 0");
  if (snapshot_interval < 0.0) fail(Errc::argument, "evolve: snapshot interval must be >= 0");

  auto rhs = [&](const Mat& rho) { return lindblad_rhs(h, q, dissipator, rho); };

  EvolutionResult result;
  result.times.push_back(0.0);
  result.states.push_back(rho0);

  Mat rho = rho0;
  double trace_drift = 0.0;

  // Integrate one segment of length `span` with full dt steps plus a
  // shortened final step that lands exactly on the segment end.
  auto integrate_segment = [&](double span) {
    const auto full_steps = static_cast<long>(std::floor(span / dt + 1e-9));
    const double remainder = span - full_steps * dt;
    for (long s = 0; s <= full_steps; ++s) {
      const double step = (s < full_steps) ? dt : remainder;
      if (step <= 1e-12) continue;
      const Mat k1 = rhs(rho);
      const Mat k2 = rhs(rho + (step / 2.0) * k1);
      const Mat k3 = rhs(rho + (step / 2.0) * k2);
      const Mat k4 = rhs(rho + step * k3);
      rho += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      rho = ((rho + rho.adjoint()) / 2.0).eval();
      const double drift = std::abs(rho.trace() - Cplx(1.0));
      trace_drift = std::max(trace_drift, drift);
      if (!(drift <= 1e-6)) {  // negated so a NaN state also aborts
        std::ostringstream os;
        os << "evolve: trace drift " << drift << " exceeds 1e-6; reduce the step size (dt = " << dt
           << ")";
        fail(Errc::physics, os.str());
      }
    }
  };

  if (snapshot_interval > 0.0) {
    const auto n_snaps = static_cast<long>(std::floor(t_final / snapshot_interval + 1e-9));
    double t_prev = 0.0;
    for (long k = 1; k <= n_snaps; ++k) {
      const double t_snap = k * snapshot_interval;
      integrate_segment(t_snap - t_prev);
      result.times.push_back(t_snap);
      result.states.push_back(rho);
      t_prev = t_snap;
    }
    if (t_final - t_prev > 1e-12) {
      integrate_segment(t_final - t_prev);
      result.times.push_back(t_final);
      result.states.push_back(rho);
    }
  } else {
    integrate_segment(t_final);
    result.times.push_back(t_final);
    result.states.push_back(rho);
  }
  result.trace_drift = trace_drift;
  return result;
}

Mat evolve_exact(const Mat& h, const Mat& rho0, double t) {
  const Eigensystem eig = hermitian_eigensystem(h);
  Vec phases(eig.values.size());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    phases(k) = std::exp(-kI * eig.values(k) * t);
  const Mat u = eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
  return u * rho0 * u.adjoint();
}

FieldChannelExtraction extract_field_channel(const ModelConfig& model, double t, double dt) {
  if (t < 0.0) fail(Errc::argument, "extract_field_channel: t must be >= 0");
  const Mat h = model_hamiltonian(model);
  const double q = model_q(model);
  const DissipatorKind dissipator = model_dissipator(model);
  const Eigen::Index atom_dim = model_atom_dim(model);

  Mat ground = Mat::Zero(atom_dim, atom_dim);
  ground(0, 0) = 1.0;

  const HilbertLabel label{{2, atom_dim}, {"field", "atom"}};
  auto output_for = [&](const Mat& field_input) {
    const Mat joint0 = tensor(field_input, ground);
    const EvolutionResult evo = evolve(h, q, dissipator, joint0, t, dt);
    return partial_trace(evo.states.back(), label, {0});
  };

  Mat e00 = Mat::Zero(2, 2), e11 = Mat::Zero(2, 2);
  e00(0, 0) = 1.0;
  e11(1, 1) = 1.0;
  Mat plus(2, 2), plus_i(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;                                  // |+><+|
  plus_i << 0.5, Cplx(0.0, -0.5), Cplx(0.0, 0.5), 0.5;         // |+i><+i|

  const Mat out00 = output_for(e00);
  const Mat out11 = output_for(e11);
  const Mat out_plus = output_for(plus);
  const Mat out_plus_i = output_for(plus_i);

  // Linear inversion: Phi(|0><1|) = Phi(|+><+|) + i Phi(|+i><+i|) - (1+i)/2 (Phi(|0><0|) + Phi(|1><1|)).
  const Mat out01 = out_plus + kI * out_plus_i - (Cplx(1.0, 1.0) / 2.0) * (out00 + out11);

  FieldChannelExtraction extraction;
  extraction.vacuum_deviation = (out00 - e00).cwiseAbs().maxCoeff();
  if (extraction.vacuum_deviation > 1e-8) {
    std::ostringstream os;
    os << "extract_field_channel: vacuum not preserved (deviation " << extraction.vacuum_deviation
       << "), model construction error";
    fail(Errc::physics, os.str());
  }
  extraction.survival_probability = out11(1, 1).real();
  extraction.params.sigma = out11;
  extraction.params.gamma = out01(0, 1);
  try {
    extraction.params.validate(1e-6, 1e-6);
  } catch (const Error& e) {
    fail(Errc::physics,
         std::string("extract_field_channel: reconstructed parameters invalid (integrator error?): ") +
             e.what());
  }
  return extraction;
}

}  // namespace cohloss
