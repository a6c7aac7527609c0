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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lcu/linalg.hpp"

namespace lcu {

// Bit a of a mask (0-based) selects Majorana c_{a+1}.
using MajoranaMask = std::uint64_t;

inline int mask_degree(MajoranaMask m) { return __builtin_popcountll(m); }

// c^A c^B = sign * c^(A xor B), both monomials in ascending mode order.
std::pair<int, MajoranaMask> monomial_product(MajoranaMask a, MajoranaMask b);

struct MajoranaTerm {
    cplx coeff;
    MajoranaMask mask;
};

// Observable sum_b a_b c^b with c^b = c_1^{b_1} ... c_{2N}^{b_{2N}}.
// Terms are kept with unique masks in ascending order.
class MajoranaPolynomial {
public:
    explicit MajoranaPolynomial(int modes, std::vector<MajoranaTerm> terms = {});

    static MajoranaPolynomial identity(int modes);
    static MajoranaPolynomial monomial(int modes, cplx coeff, MajoranaMask mask);

    int modes() const { return modes_; }
    int qubits() const { return modes_ / 2; }
    const std::vector<MajoranaTerm>& terms() const { return terms_; }
    int max_degree() const;
    cplx coefficient(MajoranaMask mask) const;

    bool hermitian(double tolerance = 1e-12) const;

    MajoranaPolynomial operator+(const MajoranaPolynomial& other) const;
    MajoranaPolynomial operator*(const MajoranaPolynomial& other) const;
    MajoranaPolynomial scaled(cplx factor) const;
    MajoranaPolynomial adjoint() const;

private:
    int modes_;
    std::vector<MajoranaTerm> terms_;
};

// Parse a Pauli string such as "Z1", "X2Y3" or "I" (1-based qubit labels)
// on N qubits and map it through Jordan-Wigner.
MajoranaPolynomial parse_pauli_observable(const std::string& text, int qubits);

// Z_1 ... Z_N = (-i)^N c_1 ... c_{2N}.
MajoranaPolynomial parity_polynomial(int qubits);

}  // namespace lcu
