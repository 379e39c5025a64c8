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

#include "cohloss/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cohloss {

Eigen::Index HilbertLabel::total_dim() const {
  Eigen::Index n = 1;
  for (Eigen::Index d : dims) {
    if (d <= 0) fail(Errc::argument, "HilbertLabel: factor dimensions must be positive");
    n *= d;
  }
  return n;
}

void HilbertLabel::validate_for(const Mat& m) const {
  if (dims.empty()) fail(Errc::argument, "HilbertLabel: no factors");
  if (!names.empty() && names.size() != dims.size())
    fail(Errc::argument, "HilbertLabel: names must be empty or match dims");
  if (m.rows() != m.cols()) fail(Errc::argument, "partial_trace: matrix must be square");
  if (total_dim() != m.rows())
    fail(Errc::argument, "HilbertLabel: product of dims (" + std::to_string(total_dim()) +
                             ") does not match matrix dimension (" + std::to_string(m.rows()) + ")");
}

void require_finite(const Mat& m, const char* what) {
  if (!m.allFinite()) fail(Errc::argument, std::string(what) + ": non-finite entries");
}

Mat tensor(const Mat& a, const Mat& b, Eigen::Index max_dim) {
  require_finite(a, "tensor");
  require_finite(b, "tensor");
  if (a.rows() * b.rows() > max_dim || a.cols() * b.cols() > max_dim)
    fail(Errc::argument, "tensor: result exceeds dimension cap " + std::to_string(max_dim));
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat partial_trace(const Mat& m, const HilbertLabel& label, const std::vector<int>& keep) {
  label.validate_for(m);
  const int nf = static_cast<int>(label.dims.size());
  if (keep.empty()) fail(Errc::argument, "partial_trace: keep set is empty");
  std::vector<bool> kept(nf, false);
  for (int f : keep) {
    if (f < 0 || f >= nf) fail(Errc::argument, "partial_trace: factor index out of range");
    if (kept[f]) fail(Errc::argument, "partial_trace: duplicate factor index");
    kept[f] = true;
  }

  // Strides of the mixed-radix flat index (left factor most significant).
  std::vector<Eigen::Index> stride(nf, 1);
  for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * label.dims[f + 1];

  std::vector<int> keep_sorted, traced;
  for (int f = 0; f < nf; ++f) (kept[f] ? keep_sorted : traced).push_back(f);

  Eigen::Index kept_dim = 1, traced_dim = 1;
  for (int f : keep_sorted) kept_dim *= label.dims[f];
  for (int f : traced) traced_dim *= label.dims[f];

  // Flat offset of a multi-index running over the given factors.
  auto offset = [&](const std::vector<int>& factors, Eigen::Index flat) {
    Eigen::Index off = 0;
    for (int k = static_cast<int>(factors.size()) - 1; k >= 0; --k) {
      const int f = factors[k];
      off += (flat % label.dims[f]) * stride[f];
      flat /= label.dims[f];
    }
    return off;
  };

  Mat out = Mat::Zero(kept_dim, kept_dim);
  for (Eigen::Index i = 0; i < kept_dim; ++i) {
    const Eigen::Index ri = offset(keep_sorted, i);
    for (Eigen::Index j = 0; j < kept_dim; ++j) {
      const Eigen::Index cj = offset(keep_sorted, j);
      Cplx sum = 0.0;
      for (Eigen::Index t = 0; t < traced_dim; ++t) {
        const Eigen::Index rt = offset(traced, t);
        sum += m(ri + rt, cj + rt);
      }
      out(i, j) = sum;
    }
  }
  return out;
}

double operator_norm(const Mat& m) {
  require_finite(m, "operator_norm");
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> s(m);
  return s.singularValues()(0);
}

Eigensystem hermitian_eigensystem(const Mat& m, double herm_tol) {
  require_finite(m, "hermitian_eigensystem");
  if (m.rows() != m.cols()) fail(Errc::argument, "hermitian_eigensystem: matrix must be square");
  const double dev = hermiticity_deviation(m);
  if (dev > herm_tol) {
    std::ostringstream os;
    os << "hermitian_eigensystem: input deviates from Hermitian by " << dev;
    fail(Errc::validation, os.str());
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver(m);
  if (solver.info() != Eigen::Success) fail(Errc::validation, "hermitian_eigensystem: solver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

SvdResult svd(const Mat& m) {
  require_finite(m, "svd");
  Eigen::JacobiSVD<Mat> s(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {s.matrixU(), s.singularValues(), s.matrixV()};
}

std::string DensityCheck::failure() const {
  std::vector<std::string> parts;
  if (!hermitian) parts.push_back("not Hermitian");
  if (!unit_trace) parts.push_back("trace != 1");
  if (!positive) parts.push_back("negative eigenvalue");
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
  return out;
}

DensityCheck validate_density_operator(const Mat& m, double tol) {
  if (m.rows() != m.cols()) fail(Errc::argument, "validate_density_operator: matrix must be square");
  require_finite(m, "validate_density_operator");
  DensityCheck check;
  check.hermiticity_deviation = hermiticity_deviation(m);
  check.hermitian = check.hermiticity_deviation <= tol;
  check.trace_deviation = std::abs(m.trace() - Cplx(1.0));
  check.unit_trace = check.trace_deviation <= tol;
  // Eigenvalues of the Hermitian part; for near-Hermitian input this is the
  // spectrum being asked about, and it keeps the check total.
  Eigen::SelfAdjointEigenSolver<Mat> solver(((m + m.adjoint()) / 2.0).eval());
  check.min_eigenvalue = solver.eigenvalues().minCoeff();
  check.positive = check.min_eigenvalue >= -tol;
  check.ok = check.hermitian && check.unit_trace && check.positive;
  return check;
}

double hermiticity_deviation(const Mat& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_unitary(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  Mat res = m.adjoint() * m - Mat::Identity(m.rows(), m.cols());
  return res.cwiseAbs().maxCoeff() <= tol;
}

Mat random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = Cplx(normal(rng), normal(rng));
  return out;
}

Mat random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Mat> qr(random_gaussian(n, n, rng));
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  for (Eigen::Index j = 0; j < n; ++j) {
    const Cplx d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Vec random_state_orthogonal_to_vacuum(Eigen::Index dim, std::mt19937_64& rng) {
  if (dim < 2) fail(Errc::argument, "random_state_orthogonal_to_vacuum: dim must be >= 2");
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec psi = Vec::Zero(dim);
  for (Eigen::Index i = 1; i < dim; ++i) psi(i) = Cplx(normal(rng), normal(rng));
  psi /= psi.norm();
  return psi;
}

}  // namespace cohloss
