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

#include "lcu/fock_oracle.hpp"
#include "lcu/linalg.hpp"
#include "lcu/polynomial.hpp"
#include "lcu/sampling.hpp"

namespace lcu {

using BasisBits = std::vector<std::uint8_t>;  // entry j is the occupation of qubit j+1

// Pure fermionic Gaussian state tracked as (Gamma, x, r = <x|psi>), with
// Gamma_ab = -i <c_a c_b> for a != b, so the vacuum has blocks [[0,1],[-1,0]].
class GaussianState {
public:
    GaussianState(RealMatrix covariance, BasisBits reference, cplx amplitude);

    const RealMatrix& covariance() const { return cov_; }
    const BasisBits& reference_basis() const { return x_; }
    cplx reference_amplitude() const { return r_; }
    int modes() const { return static_cast<int>(cov_.rows()); }
    int qubits() const { return modes() / 2; }

private:
    RealMatrix cov_;
    BasisBits x_;
    cplx r_;
};

GaussianState vacuum(int qubits);

// Represents U(R)|s> with U(R) the principal lift of gaussian_unitary_from_rotation.
GaussianState apply_rotation(const GaussianState& s, const MajoranaRotation& r);

// c^mask |s>, exact, O(N^2) per Majorana.
GaussianState apply_majorana_string(const GaussianState& s, MajoranaMask mask);

// Multiplies the represented state by a phase.
GaussianState with_phase(const GaussianState& s, cplx phase);

cplx amplitude(const GaussianState& s, const BasisBits& y);

cplx overlap(const GaussianState& a, const GaussianState& b);

// <a| p |b>.
cplx matrix_element(const GaussianState& a, const MajoranaPolynomial& p, const GaussianState& b);

struct LcuExpectation {
    double m;
    ComplexMatrix components;  // components(i, j) = <psi_j| O |psi_i>
};

// With use_hermiticity only i <= j pairs are evaluated and the rest mirrored.
LcuExpectation lcu_expectation(const CoefficientVector& c, const std::vector<GaussianState>& states,
                               const MajoranaPolynomial& p, bool use_hermiticity = true);

// Most likely computational basis state by sequential Z measurement on Gamma;
// its probability is at least 2^-N.
BasisBits greedy_pivot(const RealMatrix& covariance);

DenseState to_dense(const GaussianState& s, int dense_limit = kDefaultDenseLimit);

std::uint64_t basis_index(const BasisBits& bits);

}  // namespace lcu
