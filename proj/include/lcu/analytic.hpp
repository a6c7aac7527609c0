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
#include <vector>

#include <boost/rational.hpp>

#include "lcu/linalg.hpp"
#include "lcu/polynomial.hpp"

namespace lcu {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

// ---- Dirichlet(1,...,1) moments, exact ----

Rational binomial(std::int64_t n, std::int64_t k);

// E[c_i^s] = 1 / C(k+s-1, s).
Rational dirichlet_moment(int k, int s);

struct DirichletCross {
    Rational e_ci_cj;
    Rational e_ci2_cj2;
    Rational cov_ci_cj;
    Rational cov_ci2_cj2;
};

DirichletCross dirichlet_cross_moments(int k);

// ---- Variance formulas ----

struct MomentSet {
    std::vector<double> em;   // E[m_i]
    std::vector<double> em2;  // E[m_i^2]
    RealMatrix ecross;        // E[|m_ij|^2], diagonal unused
    int k() const { return static_cast<int>(em.size()); }
    void validate() const;
};

struct VariancePrediction {
    double value;
    std::string formula_id;
};

VariancePrediction lcu_variance_general(const MomentSet& ms);

VariancePrediction lcu_variance_homogeneous(double em, double em2, double ecross, int k);

struct LowerBound {
    double weighted;   // sum_j w_j * Var[m_j]
    double fallback;   // min_j Var[m_j] / k^p
    double certified;  // max of the two
};

// Coherent case: weights E[c_j^2]^2, fallback exponent 3.
LowerBound worst_case_lower_bound(const std::vector<double>& var_mins, const std::vector<double>& ec2);

// ---- SO(2N) moments ----

double p_functional(const MajoranaPolynomial& p, int kappa);
cplx c_functional(const MajoranaPolynomial& p, int kappa);

struct SoMoments {
    double em;
    double em2;
};

// Haar moments over SO(2N) for the vacuum initial state.
SoMoments so_moments(const MajoranaPolynomial& p, int qubits);

struct TraceData {
    double tr_rho2 = 1.0;
    double tr_rho2_p = 1.0;
    double tr_rho_p_rho_p = 1.0;
    double tr_o2 = 0.0;
    double tr_o2_p = 0.0;
    double tr_opop = 0.0;
};

// Vacuum state traces together with exact observable traces computed from
// the polynomial algebra.
TraceData vacuum_trace_data(const MajoranaPolynomial& p);

// E[|m_ij|^2] over independent SO(2N) pairs.
double ff_cross_term(const TraceData& td, int qubits);

// Quadratic observable, even pure Gaussian initial state.
VariancePrediction ff_lcu_variance(int qubits, int k, double tr_o2_over_d);

// Same expression with a 2^{N-2} denominator in the cross term; a competing
// form kept only so Monte Carlo can adjudicate between the two.
VariancePrediction ff_lcu_variance_alt_denominator(int qubits, int k, double tr_o2_over_d);

struct GeneralFfVariance {
    VariancePrediction printed;    // three-term form with coefficient -4(5k-7)
    VariancePrediction rederived;  // so_moments + ff_cross_term through lcu_variance_homogeneous
    double em;
    double em2;
    double ecross;
};

GeneralFfVariance general_ff_variance(const MajoranaPolynomial& p, const TraceData& td, int qubits, int k);

// ---- Unitary group ----

double su_cross_term(double tr_o2, double tr_rho0_sq, double dim);

struct SuMoments {
    double em;
    double em2_centred;
};

SuMoments su_moments(double tr_o, double tr_o2, double tr_rho_sq, int qubits);

enum class ExpressiveVariant {
    TracelessOnly,  // reject tr(O) != 0
    Printed,        // final term -tr(O)^2/2^N as printed
    FromMoments,    // su_moments fed into lcu_variance_homogeneous
};

VariancePrediction expressive_variance(double tr_o, double tr_o2, double tr_rho_sq, int qubits, int k,
                                       ExpressiveVariant variant = ExpressiveVariant::TracelessOnly);

// ---- Incoherent superpositions ----

VariancePrediction incoherent_variance(const std::vector<double>& em, const std::vector<double>& em2, int k);

// Weights E[c_i]^2, fallback exponent 1.
LowerBound incoherent_bound(const std::vector<double>& vars, const std::vector<double>& ec, int k);

}  // namespace lcu
