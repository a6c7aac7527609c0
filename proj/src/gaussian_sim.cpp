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

#include "lcu/gaussian_sim.hpp"

#include <cmath>

#include "lcu/errors.hpp"

// Every phase-exact quantity below is a trace of a product of normalised
// Gaussian operators X_1 ... X_{m-1} (each given by K_j = i*Gamma_j) followed
// by a Majorana string c^S:
//
//   tr(X_1 ... X_{m-1} c^S) = (-i)^{mN} 2^{-N(m-2)} (-1)^{sum S} Pf(M \ S)
//
// M is the block matrix with diagonal blocks K_1 .. K_{m-1}, 0, upper blocks
// (j,k) equal to (-1)^{k-j} I, and the rows/columns of S removed from the last
// slot (0-based Majorana indices). Amplitudes follow by inserting a basis
// projector and a string that maps the reference basis state onto it.

namespace lcu {

namespace {

cplx i_power(int e) {
    switch (((e % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

struct BasisString {
    std::vector<int> majoranas;  // ascending 0-based indices
    cplx beta;                   // c^S |y> = beta |x>
};

// Acts with c_a on |z>, returning the phase and updating z in place.
cplx majorana_on_bits(int a, BasisBits& z) {
    const int j = a / 2;
    int parity = 0;
    for (int k = 0; k < j; ++k) parity ^= z[static_cast<std::size_t>(k)];
    cplx ph = parity ? -1.0 : 1.0;
    if (a % 2) ph *= z[static_cast<std::size_t>(j)] ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
    z[static_cast<std::size_t>(j)] ^= 1;
    return ph;
}

BasisString string_between(const BasisBits& y, const BasisBits& x) {
    BasisString out{{}, cplx(1.0)};
    for (std::size_t j = 0; j < x.size(); ++j)
        if (x[j] != y[j]) out.majoranas.push_back(static_cast<int>(2 * j));
    BasisBits z = y;
    for (auto it = out.majoranas.rbegin(); it != out.majoranas.rend(); ++it) out.beta *= majorana_on_bits(*it, z);
    return out;
}

ComplexMatrix basis_block(const BasisBits& y) {
    const Eigen::Index n = static_cast<Eigen::Index>(2 * y.size());
    ComplexMatrix k = ComplexMatrix::Zero(n, n);
    for (std::size_t j = 0; j < y.size(); ++j) {
        const double s = y[j] ? -1.0 : 1.0;
        const auto a = static_cast<Eigen::Index>(2 * j);
        k(a, a + 1) = cplx(0.0, s);
        k(a + 1, a) = cplx(0.0, -s);
    }
    return k;
}

ComplexMatrix state_block(const GaussianState& s) { return cplx(0.0, 1.0) * s.covariance().cast<cplx>(); }

cplx trace_with_string(const std::vector<ComplexMatrix>& blocks, const std::vector<int>& s, int qubits) {
    const Eigen::Index n = 2 * qubits;
    const int m = static_cast<int>(blocks.size()) + 1;
    const Eigen::Index dim = (m - 1) * n + n - static_cast<Eigen::Index>(s.size());

    // Positions of the kept last-slot indices.
    std::vector<Eigen::Index> pos(static_cast<std::size_t>(n), -1);
    {
        Eigen::Index p = (m - 1) * n;
        std::size_t t = 0;
        for (Eigen::Index a = 0; a < n; ++a) {
            if (t < s.size() && s[t] == a) { ++t; continue; }
            pos[static_cast<std::size_t>(a)] = p++;
        }
    }

    ComplexMatrix mat = ComplexMatrix::Zero(dim, dim);
    for (int j = 0; j < m - 1; ++j) {
        mat.block(j * n, j * n, n, n) = blocks[static_cast<std::size_t>(j)];
        for (int k = j + 1; k < m - 1; ++k) {
            const double sg = ((k - j) % 2) ? -1.0 : 1.0;
            for (Eigen::Index a = 0; a < n; ++a) {
                mat(j * n + a, k * n + a) = sg;
                mat(k * n + a, j * n + a) = -sg;
            }
        }
        const double sg = ((m - 1 - j) % 2) ? -1.0 : 1.0;
        for (Eigen::Index a = 0; a < n; ++a) {
            const Eigen::Index q = pos[static_cast<std::size_t>(a)];
            if (q < 0) continue;
            mat(j * n + a, q) = sg;
            mat(q, j * n + a) = -sg;
        }
    }

    int ssum = 0;
    for (int a : s) ssum += a;
    const double sign = (ssum % 2) ? -1.0 : 1.0;
    const cplx phase = i_power(3 * ((m * qubits) % 4));
    return phase * std::ldexp(sign, -qubits * (m - 2)) * pfaffian(mat, 1e-8);
}

void check_pair(const GaussianState& a, const GaussianState& b) {
    if (a.modes() != b.modes()) throw DomainError("gaussian states: mode mismatch");
}

bool odd_parity(const GaussianState& s) {
    int p = 0;
    for (std::uint8_t b : s.reference_basis()) p ^= b;
    return p != 0;
}

GaussianState rotate_direct(const GaussianState& s, const RealMatrix& r,
                            const Eigen::PartialPivLU<RealMatrix>& lu_plus) {
    const int n = s.qubits();
    const Eigen::Index modes = s.modes();
    const RealMatrix id = RealMatrix::Identity(modes, modes);
    // tr U = 2^N sqrt(det((I+R)/2)) = sqrt(det(I+R)), positive for the principal lift.
    const double tr_u = std::sqrt(std::max(0.0, lu_plus.determinant()));
    // Normalised U has Gamma_U = i (R-I)(R+I)^{-1}; its block is i*Gamma_U.
    const RealMatrix cayley = lu_plus.solve(r - id);  // commutes with (I+R)^{-1}
    const ComplexMatrix k_u = (-0.5 * (cayley - cayley.transpose())).cast<cplx>();

    RealMatrix cov = r * s.covariance() * r.transpose();
    cov = 0.5 * (cov - cov.transpose());
    const ComplexMatrix k_psi = state_block(s);

    auto amplitude_at = [&](const BasisBits& y) {
        const BasisString str = string_between(y, s.reference_basis());
        const cplx t = tr_u * trace_with_string({basis_block(y), k_u, k_psi}, str.majoranas, n);
        return t / (str.beta * std::conj(s.reference_amplitude()));
    };

    BasisBits y = s.reference_basis();
    cplx amp = amplitude_at(y);
    if (std::abs(amp) < std::pow(2.0, -0.5 * n - 2.0)) {
        y = greedy_pivot(cov);
        amp = amplitude_at(y);
        if (std::abs(amp) < 0.5 * std::pow(2.0, -0.5 * n))
            throw NumericalError("apply_rotation: re-pivot produced a vanishing amplitude");
    }
    return GaussianState(std::move(cov), std::move(y), amp);
}

}  // namespace

GaussianState::GaussianState(RealMatrix covariance, BasisBits reference, cplx amplitude)
    : cov_(std::move(covariance)), x_(std::move(reference)), r_(amplitude) {
    if (cov_.rows() != cov_.cols() || cov_.rows() % 2 != 0 || cov_.rows() == 0)
        throw DomainError("GaussianState: covariance must be 2N x 2N");
    if (x_.size() * 2 != static_cast<std::size_t>(cov_.rows()))
        throw DomainError("GaussianState: reference basis length mismatch");
    if (!is_antisymmetric(cov_, 1e-10)) throw ContractViolation("GaussianState: covariance not antisymmetric");
    if (!is_orthogonal(cov_, 1e-8)) throw ContractViolation("GaussianState: covariance is not pure");
    if (!(std::abs(r_) > 0.0) || std::abs(r_) > 1.0 + 1e-10)
        throw ContractViolation("GaussianState: reference amplitude out of range");
}

GaussianState vacuum(int qubits) {
    if (qubits < 1) throw DomainError("vacuum: qubit count must be >= 1");
    RealMatrix cov = RealMatrix::Zero(2 * qubits, 2 * qubits);
    for (int j = 0; j < qubits; ++j) {
        cov(2 * j, 2 * j + 1) = 1.0;
        cov(2 * j + 1, 2 * j) = -1.0;
    }
    return GaussianState(std::move(cov), BasisBits(static_cast<std::size_t>(qubits), 0), cplx(1.0));
}

GaussianState apply_rotation(const GaussianState& s, const MajoranaRotation& r) {
    if (r.modes() != s.modes()) throw DomainError("apply_rotation: mode mismatch");
    if (odd_parity(s)) {
        // U psi = (U c_1 U^dag) U c_1 psi with U c_1 U^dag = sum_a R_a1 c_a.
        const GaussianState even = apply_rotation(apply_majorana_string(s, 1), r);
        RealMatrix cov = r.matrix() * s.covariance() * r.matrix().transpose();
        cov = 0.5 * (cov - cov.transpose());
        auto amplitude_at = [&](const BasisBits& y) {
            cplx amp(0.0);
            for (int a = 0; a < s.modes(); ++a) {
                const double w = r.matrix()(a, 0);
                if (w == 0.0) continue;
                BasisBits yp = y;
                const cplx ph = majorana_on_bits(a, yp);
                amp += w * std::conj(ph) * amplitude(even, yp);
            }
            return amp;
        };
        BasisBits y = s.reference_basis();
        cplx amp = amplitude_at(y);
        if (std::abs(amp) < std::pow(2.0, -0.5 * s.qubits() - 2.0)) {
            y = greedy_pivot(cov);
            amp = amplitude_at(y);
        }
        return GaussianState(std::move(cov), std::move(y), amp);
    }
    const RealMatrix& rm = r.matrix();
    const RealMatrix id = RealMatrix::Identity(rm.rows(), rm.cols());
    Eigen::PartialPivLU<RealMatrix> lu(id + rm);
    if (lu.rcond() > 1e-6) return rotate_direct(s, rm, lu);
    // Near the -1 eigenvalue the Cayley form degrades: apply the principal
    // half rotation twice (same lift, since the generator halves).
    const RealMatrix half = sqrtm_special_orthogonal(rm);
    Eigen::PartialPivLU<RealMatrix> lu_half(id + half);
    return rotate_direct(rotate_direct(s, half, lu_half), half, lu_half);
}

GaussianState apply_majorana_string(const GaussianState& s, MajoranaMask mask) {
    RealMatrix cov = s.covariance();
    BasisBits x = s.reference_basis();
    cplx r = s.reference_amplitude();
    for (int a = s.modes() - 1; a >= 0; --a) {
        if (!((mask >> a) & 1)) continue;
        // c_a rho c_a flips the sign of every Majorana except c_a.
        cov.row(a) *= -1.0;
        cov.col(a) *= -1.0;
        // <x'|c_a psi> = phase * <x|psi> where c_a|x> = phase |x'>.
        r *= majorana_on_bits(a, x);
    }
    return GaussianState(std::move(cov), std::move(x), r);
}

GaussianState with_phase(const GaussianState& s, cplx phase) {
    return GaussianState(s.covariance(), s.reference_basis(), s.reference_amplitude() * phase);
}

cplx amplitude(const GaussianState& s, const BasisBits& y) {
    if (y.size() != s.reference_basis().size()) throw DomainError("amplitude: basis length mismatch");
    // The trace identity holds for even operators only; odd states go through
    // <y|psi> = <y|c_1 c_1|psi> = conj(phase) <y'|c_1 psi> with c_1|y> = phase|y'>.
    if (odd_parity(s)) {
        BasisBits yp = y;
        const cplx ph = majorana_on_bits(0, yp);
        return std::conj(ph) * amplitude(apply_majorana_string(s, 1), yp);
    }
    const BasisString str = string_between(y, s.reference_basis());
    const cplx t = trace_with_string({basis_block(y), state_block(s)}, str.majoranas, s.qubits());
    return t / (str.beta * std::conj(s.reference_amplitude()));
}

cplx overlap(const GaussianState& a, const GaussianState& b) {
    check_pair(a, b);
    const bool odd = odd_parity(a);
    if (odd != odd_parity(b)) return 0.0;
    if (odd) return overlap(apply_majorana_string(a, 1), apply_majorana_string(b, 1));
    const BasisString str = string_between(a.reference_basis(), b.reference_basis());
    const cplx t = trace_with_string({basis_block(a.reference_basis()), state_block(a), state_block(b)},
                                     str.majoranas, a.qubits());
    return t / (str.beta * a.reference_amplitude() * std::conj(b.reference_amplitude()));
}

cplx matrix_element(const GaussianState& a, const MajoranaPolynomial& p, const GaussianState& b) {
    check_pair(a, b);
    if (p.modes() != a.modes()) throw DomainError("matrix_element: polynomial mode mismatch");
    cplx total(0.0);
    for (const auto& t : p.terms())
        total += t.coeff * (t.mask == 0 ? overlap(a, b) : overlap(a, apply_majorana_string(b, t.mask)));
    return total;
}

LcuExpectation lcu_expectation(const CoefficientVector& c, const std::vector<GaussianState>& states,
                               const MajoranaPolynomial& p, bool use_hermiticity) {
    if (c.size() != states.size()) throw DomainError("lcu_expectation: length mismatch");
    if (!p.hermitian()) throw DomainError("lcu_expectation: observable is not Hermitian");
    const auto k = static_cast<Eigen::Index>(states.size());
    ComplexMatrix comp(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) {
            if (use_hermiticity && j < i) continue;
            comp(i, j) = matrix_element(states[static_cast<std::size_t>(j)], p, states[static_cast<std::size_t>(i)]);
            if (use_hermiticity && j > i) comp(j, i) = std::conj(comp(i, j));
        }
    cplx m(0.0);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            m += c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(j)] * comp(i, j);
    if (std::abs(m.imag()) > 1e-9) throw NumericalError("lcu_expectation: imaginary residual above tolerance");
    return {m.real(), std::move(comp)};
}

BasisBits greedy_pivot(const RealMatrix& covariance) {
    RealMatrix g = covariance;
    const Eigen::Index modes = g.rows();
    BasisBits y(static_cast<std::size_t>(modes / 2), 0);
    for (Eigen::Index j = 0; j < modes / 2; ++j) {
        const Eigen::Index a = 2 * j, b = 2 * j + 1;
        const double s = g(a, b) >= 0.0 ? 1.0 : -1.0;
        y[static_cast<std::size_t>(j)] = s > 0 ? 0 : 1;
        const double den = 1.0 + s * g(a, b);
        const Eigen::VectorXd ra = g.row(a).transpose();
        const Eigen::VectorXd rb = g.row(b).transpose();
        // Conditioning on the outcome: G_kl += s (G_al G_bk - G_ak G_bl) / den.
        g.noalias() += (s / den) * (rb * ra.transpose() - ra * rb.transpose());
        g.row(a).setZero();
        g.row(b).setZero();
        g.col(a).setZero();
        g.col(b).setZero();
        g(a, b) = s;
        g(b, a) = -s;
    }
    return y;
}

std::uint64_t basis_index(const BasisBits& bits) {
    std::uint64_t idx = 0;
    for (std::uint8_t b : bits) idx = (idx << 1) | (b & 1u);
    return idx;
}

DenseState to_dense(const GaussianState& s, int dense_limit) {
    const int n = s.qubits();
    if (n > dense_limit) throw ResourceError("to_dense: qubit count exceeds the dense-backend limit");
    const std::uint64_t dim = std::uint64_t(1) << n;
    DenseState out{ComplexVector::Zero(static_cast<Eigen::Index>(dim))};
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        BasisBits y(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) y[static_cast<std::size_t>(j)] = (idx >> (n - 1 - j)) & 1u;
        out.amplitudes(static_cast<Eigen::Index>(idx)) = amplitude(s, y);
    }
    return out;
}

}  // namespace lcu
