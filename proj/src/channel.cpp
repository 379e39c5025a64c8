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

#include "cohloss/channel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace cohloss {

namespace {

Mat vacuum_projector(Eigen::Index dim) {
  Mat p = Mat::Zero(dim, dim);
  p(0, 0) = 1.0;
  return p;
}

Mat matrix_unit(Eigen::Index dim, Eigen::Index i, Eigen::Index j) {
  Mat e = Mat::Zero(dim, dim);
  e(i, j) = 1.0;
  return e;
}

// Golden-section refinement of a local extremum of f around grid point x0
// with grid spacing h. maximize=false searches for a minimum.
double refine_extremum(const std::function<double(double)>& f, double x0, double h, bool maximize) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = x0 - h, b = x0 + h;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 80 && (b - a) > 1e-13; ++it) {
    const bool move_left = maximize ? (fc > fd) : (fc < fd);
    if (move_left) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2.0;
}

}  // namespace

KrausChannel KrausChannel::create(Eigen::Index dim, std::vector<Mat> ops, double tp_tol) {
  if (dim < 1) fail(Errc::argument, "KrausChannel: dim must be positive");
  if (ops.empty()) fail(Errc::validation, "KrausChannel: at least one Kraus operator required");
  Mat completeness = Mat::Zero(dim, dim);
  for (const Mat& k : ops) {
    if (k.rows() != dim || k.cols() != dim)
      fail(Errc::argument, "KrausChannel: Kraus operator dimension mismatch");
    require_finite(k, "KrausChannel");
    completeness += k.adjoint() * k;
  }
  const double dev = (completeness - Mat::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (dev > tp_tol) {
    std::ostringstream os;
    os << "KrausChannel: not trace preserving, max |sum K†K - I| = " << dev;
    fail(Errc::validation, os.str());
  }
  return {dim, std::move(ops)};
}

KrausChannel KrausChannel::identity(Eigen::Index dim) {
  return {dim, {Mat::Identity(dim, dim)}};
}

void LossChannelParams::validate(double tol, double ineq_slack) const {
  if (sigma.rows() != 2 || sigma.cols() != 2)
    fail(Errc::argument, "LossChannelParams: sigma must be 2x2");
  const DensityCheck check = validate_density_operator(sigma, tol);
  if (!check.ok)
    fail(Errc::validation, "LossChannelParams: sigma is not a density operator (" + check.failure() + ")");
  if (std::abs(gamma) > 1.0 + tol)
    fail(Errc::validation, "LossChannelParams: |gamma| > 1");
  const double s00 = sigma00();
  const double lhs = s00 * std::norm(gamma) + std::norm(sigma01());
  const double rhs = s00 * (1.0 - s00);
  if (lhs > rhs + ineq_slack) {
    std::ostringstream os;
    os << "LossChannelParams: sigma00 |gamma|^2 + |sigma01|^2 <= sigma00 (1 - sigma00) violated ("
       << lhs << " > " << rhs << ")";
    fail(Errc::validation, os.str());
  }
}

Mat apply_channel(const KrausChannel& ch, const Mat& x) {
  if (x.rows() != ch.dim || x.cols() != ch.dim)
    fail(Errc::argument, "apply_channel: input dimension mismatch");
  Mat out = Mat::Zero(ch.dim, ch.dim);
  for (const Mat& k : ch.kraus) out += k * x * k.adjoint();
  return out;
}

Mat choi_matrix(const KrausChannel& ch) {
  const Eigen::Index d = ch.dim;
  Mat choi = Mat::Zero(d * d, d * d);
  // choi = sum_k w w† with w = sum_i |i> (x) K|i>, flat index i*d + m.
  for (const Mat& k : ch.kraus) {
    Vec w(d * d);
    for (Eigen::Index i = 0; i < d; ++i) w.segment(i * d, d) = k.col(i);
    choi += w * w.adjoint();
  }
  return choi;
}

double vacuum_preservation_deviation(const KrausChannel& ch) {
  const Mat vac = vacuum_projector(ch.dim);
  return (apply_channel(ch, vac) - vac).cwiseAbs().maxCoeff();
}

bool is_vacuum_preserving(const KrausChannel& ch, double tol) {
  return vacuum_preservation_deviation(ch) <= tol;
}

KrausChannel kraus_from_action(Eigen::Index dim, const std::function<Mat(const Mat&)>& action,
                               double psd_tol) {
  Mat choi = Mat::Zero(dim * dim, dim * dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      choi += tensor(matrix_unit(dim, i, j), action(matrix_unit(dim, i, j)));

  const Eigensystem eig = hermitian_eigensystem(choi, 1e-9);
  std::vector<Mat> ops;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const double lambda = eig.values(k);
    if (lambda < -psd_tol) {
      std::ostringstream os;
      os << "kraus_from_action: Choi matrix not PSD (eigenvalue " << lambda << ")";
      fail(Errc::validation, os.str());
    }
    if (lambda <= psd_tol) continue;
    // Choi eigenvector with flat index i*dim + m corresponds to K(m, i).
    Mat k_op(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) k_op.col(i) = eig.vectors.col(k).segment(i * dim, dim);
    ops.push_back(std::sqrt(lambda) * k_op);
  }
  return KrausChannel::create(dim, std::move(ops));
}

KrausChannel from_loss_params(const LossChannelParams& p) {
  p.validate();
  const Mat sigma = (p.sigma + p.sigma.adjoint()) / 2.0;
  const Cplx gamma = p.gamma;
  auto action = [&sigma, gamma](const Mat& rho) {
    Mat out = Mat::Zero(2, 2);
    out(0, 0) += rho(0, 0);
    out += sigma * rho(1, 1);
    out(0, 1) += gamma * rho(0, 1);
    out(1, 0) += std::conj(gamma) * rho(1, 0);
    return out;
  };
  return kraus_from_action(2, action);
}

LossChannelParams loss_params_from_channel(const KrausChannel& ch, double validate_tol) {
  if (ch.dim != 2) fail(Errc::argument, "loss_params_from_channel: channel must have dim 2");
  LossChannelParams p;
  p.sigma = apply_channel(ch, matrix_unit(2, 1, 1));
  p.gamma = apply_channel(ch, matrix_unit(2, 0, 1))(0, 1);
  p.validate(validate_tol, validate_tol);
  return p;
}

LpcReport lpc(const KrausChannel& ch, const Vec& psi_perp, double vac_tol) {
  if (psi_perp.size() != ch.dim) fail(Errc::argument, "lpc: psi_perp dimension mismatch");
  if (std::abs(psi_perp.norm() - 1.0) > 1e-10)
    fail(Errc::validation, "lpc: psi_perp is not normalized");
  if (std::abs(psi_perp(0)) > 1e-10)
    fail(Errc::validation, "lpc: psi_perp is not orthogonal to the vacuum");
  const double vac_dev = vacuum_preservation_deviation(ch);
  if (vac_dev > vac_tol) {
    std::ostringstream os;
    os << "lpc: channel is not vacuum preserving (deviation " << vac_dev << ")";
    fail(Errc::validation, os.str());
  }

  const Eigen::Index d = ch.dim;
  const Mat rho_psi = psi_perp * psi_perp.adjoint();
  const Mat phi_psi = apply_channel(ch, rho_psi);

  const Cplx loss_c = phi_psi(0, 0);
  if (std::abs(loss_c.imag()) > 1e-12)
    fail(Errc::physics, "lpc: loss has a non-negligible imaginary part");

  // P and C reduce to Euclidean norms of P_perp Phi(.)|0>, the vector of
  // components 1..d-1 of the first column.
  Mat coherence_in = Mat::Zero(d, d);
  coherence_in.col(0) = psi_perp;  // |psi><0|
  const Mat phi_coh = apply_channel(ch, coherence_in);

  LpcReport report;
  report.loss = loss_c.real();
  report.preservation = phi_coh.col(0).tail(d - 1).norm();
  report.creation = phi_psi.col(0).tail(d - 1).norm();
  report.inequality_slack = report.loss * (1.0 - report.loss) -
                            report.loss * report.preservation * report.preservation -
                            report.creation * report.creation;
  if (d == 2) {
    const double s00 = apply_channel(ch, matrix_unit(2, 1, 1))(0, 0).real();
    const Cplx gamma = apply_channel(ch, matrix_unit(2, 0, 1))(0, 1);
    report.excess_coherence_loss = 1.0 - s00 - std::norm(gamma);
  }
  return report;
}

bool check_exclusion_inequality(const LpcReport& report, double slack_tol, double zero_loss_tol,
                                double zero_creation_tol) {
  const double lhs = report.loss * report.preservation * report.preservation +
                     report.creation * report.creation;
  const double rhs = report.loss * (1.0 - report.loss);
  if (lhs > rhs + slack_tol) return false;
  if (report.loss <= zero_loss_tol && report.creation > zero_creation_tol) return false;
  return true;
}

KrausChannel random_vacuum_preserving_channel(int d, int anc, std::uint64_t seed) {
  if (d < 1 || anc < 1) fail(Errc::argument, "random_vacuum_preserving_channel: d and anc must be >= 1");
  const Eigen::Index sys = 1 + d;
  const Eigen::Index n = sys * anc;
  std::mt19937_64 rng(seed);

  // Column 0 is the image of |0, a>: a random unit vector supported on the
  // |0> (x) H_a block (flat indices 0..anc-1). Remaining columns are Gaussian,
  // orthonormalized by modified Gram-Schmidt with one re-orthogonalization.
  Mat u = random_gaussian(n, n, rng);
  u.col(0).setZero();
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec a0(anc);
  for (Eigen::Index e = 0; e < anc; ++e) a0(e) = Cplx(normal(rng), normal(rng));
  a0 /= a0.norm();
  u.col(0).head(anc) = a0;

  for (Eigen::Index j = 1; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < j; ++i) u.col(j) -= u.col(i).dot(u.col(j)) * u.col(i);
    const double nrm = u.col(j).norm();
    if (nrm < 1e-8) fail(Errc::physics, "random_vacuum_preserving_channel: degenerate Gram-Schmidt");
    u.col(j) /= nrm;
  }

  // K_e(s', s) = <s', e| U |s, 0> with joint flat index s*anc + e.
  std::vector<Mat> ops(anc, Mat(sys, sys));
  for (Eigen::Index e = 0; e < anc; ++e)
    for (Eigen::Index sp = 0; sp < sys; ++sp)
      for (Eigen::Index s = 0; s < sys; ++s) ops[e](sp, s) = u(sp * anc + e, s * anc);
  return KrausChannel::create(sys, std::move(ops));
}

namespace {

// Two-path state space: path A (x) path B, each (1+d)-dimensional with index
// 0 = vacuum. The 50/50 splitter mixes the pair (|i,0>, |0,i>) for each
// internal index i and leaves the vacuum-vacuum and two-particle components
// alone; the simulated state never populates the latter.
Mat two_path_splitter(Eigen::Index dim) {
  const Eigen::Index n = dim * dim;
  const double s = 1.0 / std::sqrt(2.0);
  Mat b = Mat::Identity(n, n);
  for (Eigen::Index i = 1; i < dim; ++i) {
    const Eigen::Index in_a = i * dim;  // |i>_A (x) |0>_B
    const Eigen::Index in_b = i;        // |0>_A (x) |i>_B
    b(in_a, in_a) = s;
    b(in_b, in_a) = s;
    b(in_a, in_b) = s;
    b(in_b, in_b) = -s;
  }
  return b;
}

}  // namespace

double simulate_mach_zehnder(const KrausChannel& ch, const Vec& psi_perp, const Mat& u_internal,
                             double chi) {
  const Eigen::Index dim = ch.dim;
  const Eigen::Index d = dim - 1;
  if (psi_perp.size() != dim) fail(Errc::argument, "simulate_mach_zehnder: psi_perp dimension mismatch");
  if (u_internal.rows() != d || u_internal.cols() != d)
    fail(Errc::argument, "simulate_mach_zehnder: internal unitary must be (dim-1) square");
  if (!is_unitary(u_internal, 1e-9))
    fail(Errc::validation, "simulate_mach_zehnder: internal operator is not unitary");
  if (std::abs(psi_perp.norm() - 1.0) > 1e-10 || std::abs(psi_perp(0)) > 1e-10)
    fail(Errc::validation, "simulate_mach_zehnder: psi_perp must be a normalized single-particle state");

  const Eigen::Index n = dim * dim;

  // Particle enters in path A.
  Vec input = Vec::Zero(n);
  for (Eigen::Index i = 1; i < dim; ++i) input(i * dim) = psi_perp(i);

  const Mat splitter = two_path_splitter(dim);
  Vec after_split = splitter * input;
  Mat rho = after_split * after_split.adjoint();

  // Channel on path A.
  const Mat eye = Mat::Identity(dim, dim);
  Mat rho_a = Mat::Zero(n, n);
  for (const Mat& k : ch.kraus) {
    const Mat kk = tensor(k, eye);
    rho_a += kk * rho * kk.adjoint();
  }

  // Guard against leakage into the two-particle components the splitter does
  // not model (cannot happen for a channel confined to vacuum+single sector).
  double leak = 0.0;
  for (Eigen::Index i = 1; i < dim; ++i)
    for (Eigen::Index j = 1; j < dim; ++j) leak += std::abs(rho_a(i * dim + j, i * dim + j));
  if (leak > 1e-12) fail(Errc::physics, "simulate_mach_zehnder: gain detected (two-particle leakage)");

  // Variable unitary and phase shift on path B.
  Mat v = Mat::Identity(dim, dim);
  v.block(1, 1, d, d) = std::exp(Cplx(0.0, chi)) * u_internal;
  const Mat vb = tensor(eye, v);
  Mat rho_b = vb * rho_a * vb.adjoint();

  // Re-interfere and detect the particle in path A (path B in vacuum).
  Mat rho_out = splitter * rho_b * splitter.adjoint();
  double p = 0.0;
  for (Eigen::Index i = 1; i < dim; ++i) p += rho_out(i * dim, i * dim).real();
  return p;
}

Mat analytic_visibility_maximizer(const KrausChannel& ch, const Vec& psi_perp) {
  const Eigen::Index d = ch.dim - 1;
  Mat coherence_in = Mat::Zero(ch.dim, ch.dim);
  coherence_in.col(0) = psi_perp;
  const Vec v = apply_channel(ch, coherence_in).col(0).tail(d);
  const Vec src = psi_perp.tail(d);
  if (v.norm() < 1e-14) return Mat::Identity(d, d);

  // Unitary mapping src to v/||v||: complete both to orthonormal bases and
  // compose the basis changes.
  auto complete_basis = [d](const Vec& first) {
    Mat basis(d, d);
    basis.col(0) = first / first.norm();
    Eigen::Index filled = 1;
    for (Eigen::Index i = 0; i < d && filled < d; ++i) {
      Vec cand = Vec::Zero(d);
      cand(i) = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (Eigen::Index j = 0; j < filled; ++j) cand -= basis.col(j).dot(cand) * basis.col(j);
      if (cand.norm() > 1e-8) basis.col(filled++) = cand / cand.norm();
    }
    if (filled < d) fail(Errc::physics, "analytic_visibility_maximizer: basis completion failed");
    return basis;
  };
  return complete_basis(v) * complete_basis(src).adjoint();
}

VisibilityScan max_visibility_scan(const KrausChannel& ch, const Vec& psi_perp, int n_unitaries,
                                   int n_chi, std::uint64_t seed, bool include_analytic) {
  if (n_chi < 8) fail(Errc::argument, "max_visibility_scan: n_chi must be >= 8");
  const Eigen::Index d = ch.dim - 1;
  std::mt19937_64 rng(seed);

  std::vector<Mat> candidates;
  candidates.push_back(Mat::Identity(d, d));
  if (include_analytic) candidates.push_back(analytic_visibility_maximizer(ch, psi_perp));
  for (int k = 0; k < n_unitaries; ++k) candidates.push_back(random_unitary(d, rng));

  VisibilityScan best;
  best.visibility = -1.0;
  const double two_pi = 2.0 * std::numbers::pi;
  for (const Mat& u : candidates) {
    auto fringe = [&](double chi) { return simulate_mach_zehnder(ch, psi_perp, u, chi); };
    double mean = 0.0;
    double p_max = -1.0, p_min = 2.0;
    double chi_max = 0.0, chi_min = 0.0;
    const double h = two_pi / n_chi;
    for (int k = 0; k < n_chi; ++k) {
      const double chi = k * h;
      const double p = fringe(chi);
      mean += p;
      if (p > p_max) {
        p_max = p;
        chi_max = chi;
      }
      if (p < p_min) {
        p_min = p;
        chi_min = chi;
      }
    }
    mean /= n_chi;
    const double chi_at_max = refine_extremum(fringe, chi_max, h, true);
    const double chi_at_min = refine_extremum(fringe, chi_min, h, false);
    const double visibility = (fringe(chi_at_max) - fringe(chi_at_min)) / 2.0;
    if (visibility > best.visibility) {
      best.visibility = visibility;
      best.unitary = u;
      best.best_chi = std::fmod(chi_at_max + two_pi, two_pi);
      best.offset = mean;
    }
  }
  return best;
}

}  // namespace cohloss
