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

#include <cmath>
#include <vector>

#include "lcu/linalg.hpp"
#include "lcu/sampling.hpp"

namespace lcu::testing {

struct MeanSe {
    double mean;
    double se;
    double z(double target) const { return std::abs(mean - target) / se; }
};

inline MeanSe mean_se(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double s2 = 0.0;
    for (double x : v) s2 += (x - m) * (x - m);
    s2 /= static_cast<double>(v.size() - 1);
    return {m, std::sqrt(s2 / static_cast<double>(v.size()))};
}

inline RealMatrix random_antisymmetric(int n, SeededRng& rng) {
    RealMatrix a = RealMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            a(i, j) = rng.normal();
            a(j, i) = -a(i, j);
        }
    return a;
}

inline ComplexMatrix random_complex_antisymmetric(int n, SeededRng& rng) {
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double re = rng.normal();
            const double im = rng.normal();
            a(i, j) = cplx(re, im);
            a(j, i) = -a(i, j);
        }
    return a;
}

inline RealMatrix random_real(int n, SeededRng& rng) {
    RealMatrix a(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) a(i, j) = rng.normal();
    return a;
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.cwiseAbs().maxCoeff();
}

// Kronecker product, used to build Pauli strings independently of the
// Jordan-Wigner code under test.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline ComplexMatrix pauli(char p) {
    ComplexMatrix m(2, 2);
    switch (p) {
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: m << 1, 0, 0, 1; break;
    }
    return m;
}

// ops[j] acts on qubit j+1 (first tensor factor).
inline ComplexMatrix pauli_string(const std::string& ops) {
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (char c : ops) out = kron(out, pauli(c));
    return out;
}

}  // namespace lcu::testing
