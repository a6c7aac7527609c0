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

#include <vector>

#include "lcu/linalg.hpp"
#include "lcu/polynomial.hpp"
#include "lcu/sampling.hpp"

namespace lcu {

inline constexpr int kDefaultDenseLimit = 10;

// Statevector on 2^N amplitudes. Qubit 1 is the most significant bit of the
// basis index, matching the tensor-factor order of the Jordan-Wigner matrices.
struct DenseState {
    ComplexVector amplitudes;

    static DenseState basis(int qubits, std::uint64_t index = 0);
    int qubits() const;
    double squared_norm() const { return amplitudes.squaredNorm(); }
};

// Mixed input for the incoherent mode, stored as a weighted list of pure states.
struct DensityOperator {
    std::vector<double> weights;
    std::vector<DenseState> states;

    static DensityOperator pure(DenseState s);
};

std::vector<ComplexMatrix> majorana_operators(int qubits, int dense_limit = kDefaultDenseLimit);

ComplexMatrix polynomial_to_operator(const MajoranaPolynomial& p, int dense_limit = kDefaultDenseLimit);

ComplexMatrix parity_operator(int qubits, int dense_limit = kDefaultDenseLimit);

// Principal lift exp(1/4 sum_ab A_ab c_a c_b) with A the principal logarithm
// of R; satisfies U^dag c_a U = sum_b R_ab c_b.
ComplexMatrix gaussian_unitary_from_rotation(const MajoranaRotation& r, int dense_limit = kDefaultDenseLimit);

// Applies p to a state without forming the dense operator.
DenseState apply_polynomial(const MajoranaPolynomial& p, const DenseState& s);

DenseState lcu_state(const CoefficientVector& c, const std::vector<ComplexMatrix>& unitaries,
                     const DenseState& initial);

double expectation(const DenseState& s, const ComplexMatrix& o);

double incoherent_expectation(const CoefficientVector& c, const std::vector<ComplexMatrix>& unitaries,
                              const std::vector<DensityOperator>& initials, const ComplexMatrix& o);

}  // namespace lcu
