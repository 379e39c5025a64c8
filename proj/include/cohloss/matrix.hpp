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

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "cohloss/error.hpp"

namespace cohloss {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

// Default tolerances: ~100x double-precision noise at the matrix sizes used
// here (everything is <= ~64 dimensional).
inline constexpr double kStructuralTol = 1e-10;  // unitarity, hermiticity, trace preservation
inline constexpr double kSpectralTol = 1e-9;     // eigen reconstruction residual
inline constexpr Eigen::Index kMaxTensorDim = 4096;

/// Tensor-factor structure of a matrix: dims are ordered with the LEFT factor
/// most significant, i.e. |i> (x) |k| maps to flat index i*dim_B + k.
struct HilbertLabel {
  std::vector<Eigen::Index> dims;
  std::vector<std::string> names;  // optional; empty or one per factor

  Eigen::Index total_dim() const;
  void validate_for(const Mat& m) const;
};

/// Kronecker product with entry[(i*b.rows+k),(j*b.cols+l)] = a(i,j)*b(k,l).
Mat tensor(const Mat& a, const Mat& b, Eigen::Index max_dim = kMaxTensorDim);

/// Trace out all factors not listed in `keep` (0-based factor indices, any
/// order; result keeps the original factor order).
Mat partial_trace(const Mat& m, const HilbertLabel& label, const std::vector<int>& keep);

/// Largest singular value.
double operator_norm(const Mat& m);

struct Eigensystem {
  RealVec values;  // ascending
  Mat vectors;     // orthonormal columns, m * col(k) = values(k) * col(k)
};

/// Eigendecomposition of a Hermitian matrix. Rejects inputs with
/// max |m - m†| entry above herm_tol.
Eigensystem hermitian_eigensystem(const Mat& m, double herm_tol = kStructuralTol);

struct SvdResult {
  Mat u;                    // rows x rows, unitary
  RealVec singular_values;  // nonincreasing, length min(rows, cols)
  Mat w;                    // cols x cols, unitary; m = u * diag * w†
};

SvdResult svd(const Mat& m);

struct DensityCheck {
  bool ok = false;
  bool hermitian = false;
  bool unit_trace = false;
  bool positive = false;
  double hermiticity_deviation = 0.0;  // max |m - m†| entry
  double trace_deviation = 0.0;        // |tr m - 1|
  double min_eigenvalue = 0.0;

  // Comma-separated list of failed conditions; empty when ok.
  std::string failure() const;
};

/// Hermitian to tol, unit trace to tol, eigenvalues >= -tol.
DensityCheck validate_density_operator(const Mat& m, double tol = 1e-9);

bool is_unitary(const Mat& m, double tol = kStructuralTol);
double hermiticity_deviation(const Mat& m);
void require_finite(const Mat& m, const char* what);

/// iid standard complex Gaussian entries (re and im each N(0,1)).
Mat random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);

/// Haar-distributed unitary (QR of a Gaussian with phase-fixed R diagonal).
Mat random_unitary(Eigen::Index n, std::mt19937_64& rng);

/// Random unit vector with zero component on |0>.
Vec random_state_orthogonal_to_vacuum(Eigen::Index dim, std::mt19937_64& rng);

}  // namespace cohloss
