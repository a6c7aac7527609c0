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

#include <catch_amalgamated.hpp>

#include <cmath>

#include "lcu/errors.hpp"
#include "lcu/fock_oracle.hpp"
#include "lcu/polynomial.hpp"
#include "test_util.hpp"

using namespace lcu;
using namespace lcu::testing;

namespace {

ComplexMatrix random_dense_gaussian(int n, SeededRng& rng) {
    const SpinElement g = sample_haar_spin(2 * n, rng);
    return double(g.sign) * gaussian_unitary_from_rotation(g.rotation);
}

}  // namespace

TEST_CASE("Jordan-Wigner base case", "[fock][jw]") {
    const auto c = majorana_operators(1);
    REQUIRE(c.size() == 2);
    CHECK(max_abs(c[0] - pauli('X')) < 1e-15);
    CHECK(max_abs(c[1] - pauli('Y')) < 1e-15);
    CHECK(max_abs(cplx(0, -1) * c[0] * c[1] - pauli('Z')) < 1e-15);
}

TEST_CASE("Jordan-Wigner strings match Kronecker products", "[fock][jw]") {
    const auto c = majorana_operators(3);
    CHECK(max_abs(c[2] - pauli_string("ZXI")) < 1e-15);
    CHECK(max_abs(c[5] - pauli_string("ZZY")) < 1e-15);
    CHECK(max_abs(c[0] - pauli_string("XII")) < 1e-15);
}

TEST_CASE("Majorana anticommutation", "[fock][jw]") {
    for (int n = 1; n <= 5; ++n) {
        const auto c = majorana_operators(n);
        const Eigen::Index dim = Eigen::Index(1) << n;
        for (int a = 0; a < 2 * n; ++a) {
            CHECK(is_hermitian(c[a], 1e-15));
            for (int b = 0; b < 2 * n; ++b) {
                const ComplexMatrix ac = c[a] * c[b] + c[b] * c[a];
                const ComplexMatrix expected = (a == b ? 2.0 : 0.0) * ComplexMatrix::Identity(dim, dim);
                CHECK(max_abs(ac - expected) < 1e-14);
            }
        }
    }
    CHECK_THROWS_AS(majorana_operators(11), ResourceError);
    CHECK_THROWS_AS(majorana_operators(0), DomainError);
}

TEST_CASE("polynomial_to_operator", "[fock][poly]") {
    CHECK(max_abs(polynomial_to_operator(MajoranaPolynomial(4))) == 0.0);
    CHECK(max_abs(polynomial_to_operator(MajoranaPolynomial::monomial(2, cplx(0, -1), 0b11)) - pauli('Z')) < 1e-15);

    SeededRng rng(11, 0);
    const int n = 3;
    const RealMatrix h = random_antisymmetric(2 * n, rng);
    std::vector<MajoranaTerm> terms;
    // i sum_{jk} h_jk c_j c_k = 2i sum_{j<k} h_jk c_j c_k
    for (int j = 0; j < 2 * n; ++j)
        for (int k = j + 1; k < 2 * n; ++k) terms.push_back({cplx(0, 2.0 * h(j, k)), (1ull << j) | (1ull << k)});
    const MajoranaPolynomial ham(2 * n, terms);
    CHECK(ham.hermitian());
    CHECK(is_hermitian(polynomial_to_operator(ham), 1e-12));

    // Products of monomials agree with products of the dense Majoranas.
    const auto c = majorana_operators(n);
    const ComplexMatrix expected = c[0] * c[3] * c[4];
    CHECK(max_abs(polynomial_to_operator(MajoranaPolynomial::monomial(6, 1.0, 0b11001)) - expected) < 1e-15);
}

TEST_CASE("Pauli observables through Jordan-Wigner", "[fock][poly]") {
    const std::vector<std::pair<std::string, std::string>> cases = {
        {"Z1", "ZII"}, {"X2", "IXI"}, {"Y3", "IIY"}, {"X1Y3", "XIY"}, {"Z1Z2Z3", "ZZZ"}, {"X2Z3Y1", "YXZ"}, {"I", "III"}};
    for (const auto& [text, ops] : cases) {
        INFO(text);
        const auto p = parse_pauli_observable(text, 3);
        CHECK(p.hermitian());
        CHECK(max_abs(polynomial_to_operator(p) - pauli_string(ops)) < 1e-14);
    }
    CHECK_THROWS_AS(parse_pauli_observable("Z4", 3), DomainError);
    CHECK_THROWS_AS(parse_pauli_observable("Q1", 3), DomainError);
    CHECK_THROWS_AS(parse_pauli_observable("Z1Z1", 3), DomainError);
}

TEST_CASE("parity operator", "[fock][parity]") {
    CHECK(max_abs(parity_operator(1) - pauli('Z')) < 1e-15);
    for (int n = 1; n <= 6; ++n) {
        const ComplexMatrix p = parity_operator(n);
        const Eigen::Index dim = p.rows();
        CHECK(max_abs(p * p - ComplexMatrix::Identity(dim, dim)) < 1e-15);
        CHECK(max_abs(polynomial_to_operator(parity_polynomial(n)) - p) < 1e-14);
        CHECK(expectation(DenseState::basis(n, 0), p) == 1.0);
    }
}

TEST_CASE("Gaussian lift conjugation contract", "[fock][lift]") {
    CHECK(max_abs(gaussian_unitary_from_rotation(MajoranaRotation::identity(4)) - ComplexMatrix::Identity(4, 4)) < 1e-14);
    SeededRng rng(12, 0);
    for (int n = 1; n <= 4; ++n) {
        const auto c = majorana_operators(n);
        for (int trial = 0; trial < 5; ++trial) {
            const auto r = sample_haar_special_orthogonal(2 * n, rng);
            const ComplexMatrix u = gaussian_unitary_from_rotation(r);
            CHECK(is_unitary(u, 1e-10));
            for (int a = 0; a < 2 * n; ++a) {
                ComplexMatrix rhs = ComplexMatrix::Zero(u.rows(), u.cols());
                for (int b = 0; b < 2 * n; ++b) rhs += r.matrix()(a, b) * c[b];
                CHECK(max_abs(u.adjoint() * c[a] * u - rhs) < 1e-8);
            }
        }
    }
}

TEST_CASE("Gaussian lift composition", "[fock][lift]") {
    SeededRng rng(13, 0);
    const int n = 3;
    const auto c = majorana_operators(n);
    for (int trial = 0; trial < 5; ++trial) {
        const auto r1 = sample_haar_special_orthogonal(2 * n, rng);
        const auto r2 = sample_haar_special_orthogonal(2 * n, rng);
        const ComplexMatrix u12 = gaussian_unitary_from_rotation(MajoranaRotation(r1.matrix() * r2.matrix()));
        const ComplexMatrix prod = gaussian_unitary_from_rotation(r1) * gaussian_unitary_from_rotation(r2);
        for (int a = 0; a < 2 * n; ++a) CHECK(max_abs(u12.adjoint() * c[a] * u12 - prod.adjoint() * c[a] * prod) < 1e-8);
        // The two agree up to a sign (the kernel of Spin -> SO).
        const cplx ratio = (u12.adjoint() * prod).trace() / double(u12.rows());
        CHECK(std::abs(std::abs(ratio.real()) - 1.0) < 1e-8);
    }
}

TEST_CASE("lcu_state examples", "[fock][lcu]") {
    const DenseState zero = DenseState::basis(1, 0);
    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    CHECK(max_abs(ComplexMatrix(lcu_state(CoefficientVector({1.0}), {id}, zero).amplitudes - zero.amplitudes)) == 0.0);
    const auto same = lcu_state(CoefficientVector({0.5, 0.5}), {id, id}, zero);
    CHECK(std::abs(same.squared_norm() - 1.0) < 1e-15);

    DenseState plus{ComplexVector::Constant(2, 1.0 / std::sqrt(2.0))};
    const auto out = lcu_state(CoefficientVector({0.5, 0.5}), {id, pauli('Z')}, plus);
    CHECK(std::abs(out.amplitudes(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(out.amplitudes(1)) < 1e-15);
    CHECK(std::abs(out.squared_norm() - 0.5) < 1e-15);
    CHECK(std::abs(expectation(out, pauli('Z')) - 0.5) < 1e-15);

    CHECK_THROWS_AS(lcu_state(CoefficientVector({1.0}), {id, id}, zero), DomainError);
    CHECK_THROWS_AS(lcu_state(CoefficientVector({1.0}), {2.0 * id}, zero), DomainError);
}

TEST_CASE("expectation decomposes into m_ij", "[fock][lcu]") {
    SeededRng rng(14, 0);
    const int n = 3;
    const ComplexMatrix o = polynomial_to_operator(parse_pauli_observable("Z1", n));
    const DenseState zero = DenseState::basis(n, 0);
    CHECK(expectation(zero, o) == 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        const int k = 3;
        const auto c = sample_dirichlet_uniform(k, rng);
        std::vector<ComplexMatrix> us;
        for (int i = 0; i < k; ++i) us.push_back(random_dense_gaussian(n, rng));
        const double m = expectation(lcu_state(c, us, zero), o);
        cplx manual = 0.0;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                // tr(U_i rho0 U_j^dag O) with rho0 = |0><0|
                const ComplexMatrix rho = zero.amplitudes * zero.amplitudes.adjoint();
                manual += c[i] * c[j] * (us[i] * rho * us[j].adjoint() * o).trace();
            }
        CHECK(std::abs(m - manual.real()) < 1e-12);
        CHECK(std::abs(manual.imag()) < 1e-12);
    }
    ComplexMatrix bad = ComplexMatrix::Zero(8, 8);
    bad(0, 0) = cplx(0, 1);
    CHECK_THROWS_AS(expectation(zero, bad), NumericalError);
}

TEST_CASE("incoherent expectation", "[fock][incoherent]") {
    SeededRng rng(15, 0);
    const int n = 2;
    const ComplexMatrix o = polynomial_to_operator(parse_pauli_observable("Z1Z2", n));
    const auto rho = DensityOperator::pure(DenseState::basis(n, 0));
    const ComplexMatrix u = random_dense_gaussian(n, rng);
    const double single = expectation(DenseState{u * rho.states[0].amplitudes}, o);
    CHECK(std::abs(incoherent_expectation(CoefficientVector({1.0}), {u}, {rho}, o) - single) < 1e-14);
    CHECK(std::abs(incoherent_expectation(CoefficientVector({0.3, 0.7}), {u, u}, {rho, rho}, o) - single) < 1e-14);

    const auto c = sample_dirichlet_uniform(3, rng);
    std::vector<ComplexMatrix> us;
    std::vector<DensityOperator> rhos;
    double manual = 0.0;
    for (int i = 0; i < 3; ++i) {
        us.push_back(random_dense_gaussian(n, rng));
        DensityOperator mixed{{0.25, 0.75}, {DenseState::basis(n, 0), DenseState::basis(n, static_cast<std::uint64_t>(i + 1))}};
        rhos.push_back(mixed);
        ComplexMatrix dm = ComplexMatrix::Zero(4, 4);
        for (int t = 0; t < 2; ++t) dm += mixed.weights[t] * mixed.states[t].amplitudes * mixed.states[t].amplitudes.adjoint();
        manual += c[i] * (us[i] * dm * us[i].adjoint() * o).trace().real();
    }
    CHECK(std::abs(incoherent_expectation(c, us, rhos, o) - manual) < 1e-13);
    CHECK_THROWS_AS(incoherent_expectation(c, us, {rho}, o), DomainError);
}

TEST_CASE("Cross terms average to zero", "[fock][moments]") {
    constexpr int kPairs = 10000;
    for (int n : {2, 3}) {
        const ComplexMatrix o = polynomial_to_operator(parse_pauli_observable("Z1", n));
        const DenseState zero = DenseState::basis(n, 0);
        for (bool unitary : {false, true}) {
            SeededRng rng(16 + n, unitary ? 1 : 0);
            std::vector<double> re, im, re2, im2, first;
            for (int t = 0; t < kPairs; ++t) {
                const ComplexMatrix ui = unitary ? sample_haar_unitary(1 << n, rng) : random_dense_gaussian(n, rng);
                const ComplexMatrix uj = unitary ? sample_haar_unitary(1 << n, rng) : random_dense_gaussian(n, rng);
                const ComplexVector a = ui * zero.amplitudes, b = uj * zero.amplitudes;
                const cplx mij = b.dot(o * a);
                re.push_back(mij.real());
                im.push_back(mij.imag());
                re2.push_back((mij * mij).real());
                im2.push_back((mij * mij).imag());
                if (!unitary) first.push_back(a.dot(o * a).real());
            }
            INFO("N = " << n << (unitary ? " U" : " SO"));
            CHECK(mean_se(re).z(0.0) < 5.0);
            CHECK(mean_se(im).z(0.0) < 5.0);
            CHECK(mean_se(re2).z(0.0) < 5.0);
            CHECK(mean_se(im2).z(0.0) < 5.0);
            if (!unitary) CHECK(mean_se(first).z(0.0) < 5.0);
        }
    }
}

TEST_CASE("LCU norm invariant under a common unitary", "[fock][lcu]") {
    SeededRng rng(19, 0);
    const int n = 3;
    const DenseState zero = DenseState::basis(n, 0);
    const auto c = sample_dirichlet_uniform(4, rng);
    std::vector<ComplexMatrix> us, vus;
    const ComplexMatrix v = sample_haar_unitary(1 << n, rng);
    for (int i = 0; i < 4; ++i) {
        us.push_back(random_dense_gaussian(n, rng));
        vus.push_back(v * us.back());
    }
    const double a = lcu_state(c, us, zero).squared_norm();
    const double b = lcu_state(c, vus, zero).squared_norm();
    CHECK(a <= 1.0 + 1e-10);
    CHECK(std::abs(a - b) < 1e-12);
}

TEST_CASE("apply_polynomial matches the dense operator", "[fock][poly]") {
    SeededRng rng(20, 0);
    const int n = 4;
    const auto p = parse_pauli_observable("X1Y3", n) + parse_pauli_observable("Z2", n).scaled(0.5);
    DenseState s{ComplexVector(1 << n)};
    for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i) s.amplitudes(i) = cplx(rng.normal(), rng.normal());
    const ComplexVector expected = polynomial_to_operator(p) * s.amplitudes;
    CHECK((apply_polynomial(p, s).amplitudes - expected).cwiseAbs().maxCoeff() < 1e-13);
}
