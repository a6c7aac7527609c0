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

#include "lcu/linalg.hpp"

#include <cmath>
#include <numbers>
#include <type_traits>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "lcu/errors.hpp"

namespace lcu {

namespace {

template <typename Mat>
double max_abs(const Mat& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <typename Mat>
void require_antisymmetric(const Mat& a, double tolerance) {
    if (a.rows() != a.cols()) throw ContractViolation("pfaffian: matrix is not square");
    if (max_abs(a + a.transpose()) > tolerance)
        throw ContractViolation("pfaffian: matrix is not antisymmetric");
}

template <typename Mat>
typename Mat::Scalar pfaffian_impl(Mat a) {
    using Scalar = typename Mat::Scalar;
    const Eigen::Index n = a.rows();
    if (n % 2 == 1) return Scalar(0);
    Scalar pf(1);
    for (Eigen::Index k = 0; k + 1 < n; k += 2) {
        Eigen::Index kp = 0;
        a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&kp);
        kp += k + 1;
        if (kp != k + 1) {
            a.row(k + 1).swap(a.row(kp));
            a.col(k + 1).swap(a.col(kp));
            pf = -pf;
        }
        if (a(k + 1, k) == Scalar(0)) return Scalar(0);
        pf *= a(k, k + 1);
        const Eigen::Index rest = n - k - 2;
        if (rest > 0) {
            Eigen::Matrix<Scalar, Eigen::Dynamic, 1> tau =
                a.row(k).tail(rest).transpose() / a(k, k + 1);
            Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v = a.col(k + 1).tail(rest);
            a.bottomRightCorner(rest, rest) +=
                tau * v.transpose() - v * tau.transpose();
        }
    }
    return pf;
}

template <typename Mat>
std::pair<Mat, Mat> qr_impl(const Mat& m, bool phase_fix) {
    using Scalar = typename Mat::Scalar;
    if (m.rows() != m.cols() || m.rows() == 0)
        throw DomainError("qr_unitary: matrix must be square and nonempty");
    Eigen::HouseholderQR<Mat> qr(m);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().template triangularView<Eigen::Upper>();
    const double scale = std::max(max_abs(m), 1e-300);
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
        const double d = std::abs(r(i, i));
        if (d <= tol::kSingular * scale)
            throw DegenerateInputError("qr_unitary: singular input");
        if (phase_fix) {
            const Scalar ph = r(i, i) / d;
            q.col(i) *= ph;
            if constexpr (std::is_same_v<Scalar, double>)
                r.row(i) *= ph;
            else
                r.row(i) *= std::conj(ph);
        }
    }
    return {q, r};
}

struct SchurBlocks {
    RealMatrix q;
    RealMatrix t;
};

// Real Schur form of an orthogonal matrix: block diagonal with 1x1 blocks
// (+-1) and 2x2 rotation blocks.
SchurBlocks orthogonal_schur(const RealMatrix& r) {
    if (!is_special_orthogonal(r, 1e-8))
        throw ContractViolation("rotation is not special orthogonal");
    Eigen::RealSchur<RealMatrix> schur(r);
    if (schur.info() != Eigen::Success) throw NumericalError("real Schur decomposition failed");
    return {schur.matrixU(), schur.matrixT()};
}

// Apply f(theta) -> angle to every rotation block; returns Q * F * Q^T where
// F holds either generator blocks (log) or rotation blocks (sqrt).
template <typename BlockFn, typename OneFn>
RealMatrix map_blocks(const SchurBlocks& s, double branch_tol, BlockFn block2, OneFn block1) {
    const Eigen::Index n = s.t.rows();
    RealMatrix f = RealMatrix::Zero(n, n);
    Eigen::Index i = 0;
    while (i < n) {
        const bool two = (i + 1 < n) && std::abs(s.t(i + 1, i)) > 0.0;
        if (two) {
            const double c = 0.5 * (s.t(i, i) + s.t(i + 1, i + 1));
            const double sn = 0.5 * (s.t(i, i + 1) - s.t(i + 1, i));
            const double theta = std::atan2(sn, c);
            if (std::numbers::pi - std::abs(theta) < branch_tol)
                throw BranchAmbiguityError("rotation has eigenvalue -1");
            f.block<2, 2>(i, i) = block2(theta);
            i += 2;
        } else {
            if (s.t(i, i) < 0.0) throw BranchAmbiguityError("rotation has eigenvalue -1");
            f(i, i) = block1();
            i += 1;
        }
    }
    return s.q * f * s.q.transpose();
}

}  // namespace

bool is_unitary(const ComplexMatrix& m, double tolerance) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())) < tolerance;
}

bool is_orthogonal(const RealMatrix& m, double tolerance) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m.transpose() * m - RealMatrix::Identity(m.rows(), m.cols())) < tolerance;
}

bool is_special_orthogonal(const RealMatrix& m, double tolerance) {
    return is_orthogonal(m, tolerance) && std::abs(m.determinant() - 1.0) < tolerance;
}

bool is_antisymmetric(const RealMatrix& m, double tolerance) {
    return m.rows() == m.cols() && max_abs(m + m.transpose()) < tolerance;
}

bool is_antisymmetric(const ComplexMatrix& m, double tolerance) {
    return m.rows() == m.cols() && max_abs(m + m.transpose()) < tolerance;
}

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
    return m.rows() == m.cols() && max_abs(m - m.adjoint()) < tolerance;
}

std::pair<RealMatrix, RealMatrix> qr_unitary(const RealMatrix& m, bool phase_fix) {
    return qr_impl(m, phase_fix);
}

std::pair<ComplexMatrix, ComplexMatrix> qr_unitary(const ComplexMatrix& m, bool phase_fix) {
    return qr_impl(m, phase_fix);
}

double pfaffian(const RealMatrix& a, double tolerance) {
    require_antisymmetric(a, tolerance);
    return pfaffian_impl(a);
}

cplx pfaffian(const ComplexMatrix& a, double tolerance) {
    require_antisymmetric(a, tolerance);
    return pfaffian_impl(a);
}

RealMatrix matrix_exp(const RealMatrix& m) {
    if (m.rows() != m.cols()) throw DomainError("matrix_exp: matrix must be square");
    RealMatrix e = m.exp();
    if (!e.allFinite()) throw NumericalError("matrix_exp: result not finite");
    return e;
}

ComplexMatrix matrix_exp(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw DomainError("matrix_exp: matrix must be square");
    ComplexMatrix e = m.exp();
    if (!e.allFinite()) throw NumericalError("matrix_exp: result not finite");
    return e;
}

RealMatrix logm_special_orthogonal(const RealMatrix& r, double branch_tol) {
    const SchurBlocks s = orthogonal_schur(r);
    RealMatrix a = map_blocks(
        s, branch_tol,
        [](double th) {
            Eigen::Matrix2d g;
            g << 0.0, th, -th, 0.0;
            return g;
        },
        [] { return 0.0; });
    return 0.5 * (a - a.transpose());
}

RealMatrix sqrtm_special_orthogonal(const RealMatrix& r, double branch_tol) {
    const SchurBlocks s = orthogonal_schur(r);
    return map_blocks(
        s, branch_tol,
        [](double th) {
            const double c = std::cos(0.5 * th), sn = std::sin(0.5 * th);
            Eigen::Matrix2d g;
            g << c, sn, -sn, c;
            return g;
        },
        [] { return 1.0; });
}

}  // namespace lcu
