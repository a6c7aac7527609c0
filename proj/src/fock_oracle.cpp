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

#include "lcu/fock_oracle.hpp"

#include <cmath>

#include "lcu/errors.hpp"

namespace lcu {

namespace {

void check_dense(int qubits, int dense_limit) {
    if (qubits < 1) throw DomainError("qubit count must be >= 1");
    if (qubits > dense_limit) throw ResourceError("qubit count exceeds the dense-backend limit");
}

// c^mask |index> = phase |index'>; Majoranas applied right to left.
std::pair<cplx, std::uint64_t> monomial_on_basis(MajoranaMask mask, std::uint64_t index, int qubits) {
    cplx phase(1.0);
    for (int a = 2 * qubits - 1; a >= 0; --a) {
        if (!((mask >> a) & 1)) continue;
        const int j = a / 2;
        const std::uint64_t bit = std::uint64_t(1) << (qubits - 1 - j);
        const std::uint64_t higher = index >> (qubits - j);  // qubits 0..j-1
        if (__builtin_popcountll(higher) % 2) phase = -phase;
        if (a % 2) phase *= (index & bit) ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
        index ^= bit;
    }
    return {phase, index};
}

}  // namespace

DenseState DenseState::basis(int qubits, std::uint64_t index) {
    const std::uint64_t dim = std::uint64_t(1) << qubits;
    if (index >= dim) throw DomainError("basis index out of range");
    DenseState s{ComplexVector::Zero(static_cast<Eigen::Index>(dim))};
    s.amplitudes(static_cast<Eigen::Index>(index)) = 1.0;
    return s;
}

int DenseState::qubits() const {
    int n = 0;
    while ((Eigen::Index(1) << n) < amplitudes.size()) ++n;
    return n;
}

DensityOperator DensityOperator::pure(DenseState s) { return {{1.0}, {std::move(s)}}; }

std::vector<ComplexMatrix> majorana_operators(int qubits, int dense_limit) {
    check_dense(qubits, dense_limit);
    std::vector<ComplexMatrix> out;
    for (int a = 0; a < 2 * qubits; ++a)
        out.push_back(polynomial_to_operator(
            MajoranaPolynomial::monomial(2 * qubits, 1.0, MajoranaMask(1) << a), dense_limit));
    return out;
}

ComplexMatrix polynomial_to_operator(const MajoranaPolynomial& p, int dense_limit) {
    const int n = p.qubits();
    check_dense(n, dense_limit);
    const Eigen::Index dim = Eigen::Index(1) << n;
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (const auto& t : p.terms())
        for (Eigen::Index col = 0; col < dim; ++col) {
            const auto [ph, row] = monomial_on_basis(t.mask, static_cast<std::uint64_t>(col), n);
            m(static_cast<Eigen::Index>(row), col) += t.coeff * ph;
        }
    return m;
}

ComplexMatrix parity_operator(int qubits, int dense_limit) {
    check_dense(qubits, dense_limit);
    const Eigen::Index dim = Eigen::Index(1) << qubits;
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        p(i, i) = (__builtin_popcountll(static_cast<unsigned long long>(i)) % 2) ? -1.0 : 1.0;
    return p;
}

ComplexMatrix gaussian_unitary_from_rotation(const MajoranaRotation& r, int dense_limit) {
    const int modes = r.modes();
    check_dense(modes / 2, dense_limit);
    const RealMatrix a = logm_special_orthogonal(r.matrix());
    std::vector<MajoranaTerm> terms;
    for (int i = 0; i < modes; ++i)
        for (int j = i + 1; j < modes; ++j)
            if (a(i, j) != 0.0)
                terms.push_back({cplx(0.5 * a(i, j)), (MajoranaMask(1) << i) | (MajoranaMask(1) << j)});
    const ComplexMatrix gen = polynomial_to_operator(MajoranaPolynomial(modes, std::move(terms)), dense_limit);
    return matrix_exp(gen);
}

DenseState apply_polynomial(const MajoranaPolynomial& p, const DenseState& s) {
    const int n = s.qubits();
    if (p.qubits() != n) throw DomainError("apply_polynomial: mode mismatch");
    DenseState out{ComplexVector::Zero(s.amplitudes.size())};
    for (const auto& t : p.terms())
        for (Eigen::Index col = 0; col < s.amplitudes.size(); ++col) {
            if (s.amplitudes(col) == cplx(0.0)) continue;
            const auto [ph, row] = monomial_on_basis(t.mask, static_cast<std::uint64_t>(col), n);
            out.amplitudes(static_cast<Eigen::Index>(row)) += t.coeff * ph * s.amplitudes(col);
        }
    return out;
}

DenseState lcu_state(const CoefficientVector& c, const std::vector<ComplexMatrix>& unitaries,
                     const DenseState& initial) {
    if (c.size() != unitaries.size()) throw DomainError("lcu_state: length mismatch");
    DenseState out{ComplexVector::Zero(initial.amplitudes.size())};
    for (std::size_t j = 0; j < unitaries.size(); ++j) {
        if (unitaries[j].rows() != initial.amplitudes.size() || !is_unitary(unitaries[j], tol::kUnitary))
            throw DomainError("lcu_state: branch operator is not a unitary of matching size");
        out.amplitudes += c[j] * (unitaries[j] * initial.amplitudes);
    }
    return out;
}

double expectation(const DenseState& s, const ComplexMatrix& o) {
    const cplx v = s.amplitudes.dot(o * s.amplitudes);  // dot conjugates the left argument
    if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v.real())))
        throw NumericalError("expectation: imaginary residual above tolerance");
    return v.real();
}

double incoherent_expectation(const CoefficientVector& c, const std::vector<ComplexMatrix>& unitaries,
                              const std::vector<DensityOperator>& initials, const ComplexMatrix& o) {
    if (c.size() != unitaries.size() || c.size() != initials.size())
        throw DomainError("incoherent_expectation: length mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto& rho = initials[i];
        if (rho.weights.size() != rho.states.size()) throw DomainError("density operator: length mismatch");
        double branch = 0.0;
        for (std::size_t t = 0; t < rho.states.size(); ++t)
            branch += rho.weights[t] * expectation(DenseState{unitaries[i] * rho.states[t].amplitudes}, o);
        total += c[i] * branch;
    }
    return total;
}

}  // namespace lcu
