/*
 * Copyright 2026 lcu-lab contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

namespace lcu {

using cplx = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

// Default tolerances. Every function taking a tolerance accepts an override.
namespace tol {
inline constexpr double kAntisymmetric = 1e-10;
inline constexpr double kOrthogonal = 1e-10;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kExpm = 1e-13;
inline constexpr double kBranch = 1e-9;   // distance of an eigenvalue from -1
inline constexpr double kSingular = 1e-13;  // relative pivot size in QR
}  // namespace tol

bool is_unitary(const ComplexMatrix& m, double tolerance = tol::kUnitary);
bool is_orthogonal(const RealMatrix& m, double tolerance = tol::kOrthogonal);
bool is_special_orthogonal(const RealMatrix& m, double tolerance = tol::kOrthogonal);
bool is_antisymmetric(const RealMatrix& m, double tolerance = tol::kAntisymmetric);
bool is_antisymmetric(const ComplexMatrix& m, double tolerance = tol::kAntisymmetric);
bool is_hermitian(const ComplexMatrix& m, double tolerance);

// Householder QR. With phase_fix the diagonal of R is real and positive,
// which makes Q a measurable function of M (needed for Haar sampling).
std::pair<RealMatrix, RealMatrix> qr_unitary(const RealMatrix& m, bool phase_fix = true);
std::pair<ComplexMatrix, ComplexMatrix> qr_unitary(const ComplexMatrix& m, bool phase_fix = true);

// Pfaffian by Parlett-Reid tridiagonalisation with partial pivoting.
// Odd dimension returns 0.
double pfaffian(const RealMatrix& a, double tolerance = tol::kAntisymmetric);
cplx pfaffian(const ComplexMatrix& a, double tolerance = tol::kAntisymmetric);

// Scaling and squaring with a Pade approximant.
RealMatrix matrix_exp(const RealMatrix& m);
ComplexMatrix matrix_exp(const ComplexMatrix& m);

// Principal logarithm of R in SO(n): real antisymmetric A with exp(A) = R and
// rotation angles in (-pi, pi). Eigenvalues at -1 raise BranchAmbiguityError.
RealMatrix logm_special_orthogonal(const RealMatrix& r, double branch_tol = tol::kBranch);

// Principal square root of R in SO(n), i.e. exp(A/2) with A as above.
RealMatrix sqrtm_special_orthogonal(const RealMatrix& r, double branch_tol = tol::kBranch);

}  // namespace lcu
