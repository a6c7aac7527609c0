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

#include "lcu/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "lcu/errors.hpp"

namespace lcu {

namespace {

cplx i_pow(int e) {
    static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[((e % 4) + 4) % 4];
}

double pow2(int e) { return std::ldexp(1.0, e); }

double real_checked(cplx v, const char* what) {
    if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v.real())))
        throw NumericalError(std::string(what) + ": unexpected imaginary part");
    return v.real();
}

MajoranaMask full_mask(int modes) {
    return modes == 64 ? ~MajoranaMask(0) : ((MajoranaMask(1) << modes) - 1);
}

Rational k_cubic(int k) { return Rational(std::int64_t(k + 1) * (k + 2) * (k + 3)); }

}  // namespace

Rational binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return Rational(0);
    k = std::min(k, n - k);
    __int128 r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;  // exact: C(n-k+i, i)
        if (r > static_cast<__int128>(INT64_MAX)) throw DomainError("binomial: overflow");
    }
    return Rational(static_cast<std::int64_t>(r));
}

Rational dirichlet_moment(int k, int s) {
    if (k < 1 || s < 0) throw DomainError("dirichlet_moment: need k >= 1, s >= 0");
    return Rational(1) / binomial(k + s - 1, s);
}

DirichletCross dirichlet_cross_moments(int k) {
    if (k < 2) throw DomainError("dirichlet_cross_moments: need k >= 2");
    const std::int64_t kk = k;
    DirichletCross d;
    d.e_ci_cj = Rational(1, kk * (kk + 1));
    d.e_ci2_cj2 = Rational(4, kk * (kk + 1) * (kk + 2) * (kk + 3));
    d.cov_ci_cj = d.e_ci_cj - dirichlet_moment(k, 1) * dirichlet_moment(k, 1);
    d.cov_ci2_cj2 = d.e_ci2_cj2 - dirichlet_moment(k, 2) * dirichlet_moment(k, 2);
    return d;
}

void MomentSet::validate() const {
    const auto n = em.size();
    if (n == 0 || em2.size() != n) throw DomainError("MomentSet: inconsistent lengths");
    if (n > 1 && (ecross.rows() != static_cast<Eigen::Index>(n) || ecross.cols() != static_cast<Eigen::Index>(n)))
        throw DomainError("MomentSet: cross matrix has wrong shape");
    for (std::size_t i = 0; i < n; ++i)
        if (em2[i] < em[i] * em[i] - 1e-12) throw DomainError("MomentSet: E[m_i^2] < E[m_i]^2");
    for (Eigen::Index i = 0; i < ecross.rows(); ++i)
        for (Eigen::Index j = 0; j < ecross.cols(); ++j)
            if (i != j && ecross(i, j) < 0.0) throw DomainError("MomentSet: negative cross magnitude");
}

VariancePrediction lcu_variance_general(const MomentSet& ms) {
    ms.validate();
    const int k = ms.k();
    const std::int64_t kk = k;
    const double w4 = to_double(Rational(24, kk * (kk + 1) * (kk + 2) * (kk + 3)));
    const double w22 = to_double(Rational(4, kk * (kk + 1) * (kk + 2) * (kk + 3)));
    const double w11 = to_double(Rational(4, kk * kk * (kk + 1) * (kk + 1)));
    double v = 0.0;
    for (int i = 0; i < k; ++i) v += w4 * ms.em2[static_cast<std::size_t>(i)];
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            const double ee = ms.em[static_cast<std::size_t>(i)] * ms.em[static_cast<std::size_t>(j)];
            if (i != j) v += w22 * (ee + ms.ecross(i, j));
            v -= w11 * ee;
        }
    return {v, "dirichlet_lcu_var_general"};
}

VariancePrediction lcu_variance_homogeneous(double em, double em2, double ecross, int k) {
    if (k < 1) throw DomainError("lcu_variance_homogeneous: k must be >= 1");
    if (em2 < em * em - 1e-12) throw DomainError("lcu_variance_homogeneous: Em2 < Em^2");
    const Rational den = k_cubic(k);
    const double a = to_double(Rational(24) / den);
    const double b = to_double(Rational(4 * (k - 1)) / den);
    const double c = to_double(Rational(4, std::int64_t(k + 1) * (k + 1)));
    return {a * em2 + b * (em * em + ecross) - c * em * em, "dirichlet_lcu_var"};
}

LowerBound worst_case_lower_bound(const std::vector<double>& var_mins, const std::vector<double>& ec2) {
    if (var_mins.empty() || var_mins.size() != ec2.size()) throw DomainError("worst_case_lower_bound: length mismatch");
    double weighted = 0.0;
    for (std::size_t j = 0; j < var_mins.size(); ++j) {
        if (var_mins[j] < 0.0) throw DomainError("worst_case_lower_bound: negative variance");
        weighted += ec2[j] * ec2[j] * var_mins[j];
    }
    const double k = static_cast<double>(var_mins.size());
    const double fallback = *std::min_element(var_mins.begin(), var_mins.end()) / (k * k * k);
    return {weighted, fallback, std::max(weighted, fallback)};
}

double p_functional(const MajoranaPolynomial& p, int kappa) {
    if (kappa < 0 || kappa > p.modes()) throw DomainError("p_functional: kappa out of range");
    cplx s(0.0);
    for (const auto& t : p.terms())
        if (mask_degree(t.mask) == kappa) s += t.coeff * t.coeff;
    return real_checked(((kappa / 2) % 2 ? -1.0 : 1.0) * s, "p_functional");
}

cplx c_functional(const MajoranaPolynomial& p, int kappa) {
    if (kappa < 0 || kappa > p.modes()) throw DomainError("c_functional: kappa out of range");
    const MajoranaMask full = full_mask(p.modes());
    cplx s(0.0);
    for (const auto& t : p.terms()) {
        if (mask_degree(t.mask) != kappa) continue;
        const cplx partner = p.coefficient(full ^ t.mask);
        if (partner == cplx(0.0)) continue;
        int index_sum = 0;  // sum of (j - 1) over 1-based j in b
        for (MajoranaMask m = t.mask; m; m &= m - 1) index_sum += __builtin_ctzll(m);
        s += (index_sum % 2 ? -1.0 : 1.0) * std::conj(t.coeff) * partner;
    }
    return i_pow(kappa % 2) * s;
}

SoMoments so_moments(const MajoranaPolynomial& p, int qubits) {
    if (p.qubits() != qubits) throw DomainError("so_moments: qubit mismatch");
    const cplx phase_n = i_pow(qubits);
    const double em = real_checked(p.coefficient(0) + phase_n * p.coefficient(full_mask(p.modes())), "so_moments");
    cplx em2(0.0);
    for (int kp = 0; kp <= qubits; ++kp) {
        const double w = to_double(binomial(qubits, kp)) / to_double(binomial(2 * qubits, 2 * kp));
        // The vacuum's C functional carries the phase i^N relative to its P functional.
        em2 += w * (p_functional(p, 2 * kp) + phase_n * c_functional(p, 2 * kp));
    }
    return {em, real_checked(em2, "so_moments")};
}

TraceData vacuum_trace_data(const MajoranaPolynomial& p) {
    const MajoranaPolynomial par = parity_polynomial(p.qubits());
    const double d = pow2(p.qubits());
    const MajoranaPolynomial o2 = p * p;
    TraceData td;
    td.tr_o2 = d * real_checked(o2.coefficient(0), "trace data");
    td.tr_o2_p = d * real_checked((o2 * par).coefficient(0), "trace data");
    td.tr_opop = d * real_checked((p * par * p * par).coefficient(0), "trace data");
    return td;
}

double ff_cross_term(const TraceData& td, int qubits) {
    const double d2 = pow2(2 * qubits);
    return (td.tr_rho2 * td.tr_o2 + 2.0 * td.tr_rho2_p * td.tr_o2_p + td.tr_rho_p_rho_p * td.tr_opop) / d2;
}

VariancePrediction ff_lcu_variance(int qubits, int k, double tr_o2_over_d) {
    if (qubits < 1 || k < 1) throw DomainError("ff_lcu_variance: need N >= 1, k >= 1");
    const Rational den = k_cubic(k);
    const Rational first = Rational(24) / (den * Rational(2 * qubits - 1));
    const double second = to_double(Rational(4 * (k - 1)) / den) / pow2(qubits - 1);
    return {tr_o2_over_d * (to_double(first) + second), "ffvar"};
}

VariancePrediction ff_lcu_variance_alt_denominator(int qubits, int k, double tr_o2_over_d) {
    if (qubits < 1 || k < 1) throw DomainError("ff_lcu_variance: need N >= 1, k >= 1");
    const Rational den = k_cubic(k);
    const Rational first = Rational(24) / (den * Rational(2 * qubits - 1));
    const double second = to_double(Rational(4 * (k - 1)) / den) / pow2(qubits - 2);
    return {tr_o2_over_d * (to_double(first) + second), "ffvar_alt_2^(N-2)"};
}

GeneralFfVariance general_ff_variance(const MajoranaPolynomial& p, const TraceData& td, int qubits, int k) {
    if (k < 1) throw DomainError("general_ff_variance: k must be >= 1");
    const SoMoments mom = so_moments(p, qubits);
    const double ecross = ff_cross_term(td, qubits);
    const Rational den = k_cubic(k);
    const double a = to_double(Rational(24) / den);
    const double b = to_double(Rational(4 * (k - 1)) / den);
    const double c = to_double(Rational(4 * (5 * k - 7)) / (den * Rational(k + 1)));
    GeneralFfVariance out;
    out.printed = {a * mom.em2 + b * ecross - c * mom.em * mom.em, "general_ff_dirichlet_lcu_var(5k-7)"};
    out.rederived = lcu_variance_homogeneous(mom.em, mom.em2, ecross, k);
    out.rederived.formula_id = "dirichlet_lcu_var<-so_moments,ff_cross_term";
    out.em = mom.em;
    out.em2 = mom.em2;
    out.ecross = ecross;
    return out;
}

double su_cross_term(double tr_o2, double tr_rho0_sq, double dim) {
    if (dim < 2) throw DomainError("su_cross_term: dimension must be >= 2");
    return tr_rho0_sq * tr_o2 / (dim * dim);
}

SuMoments su_moments(double tr_o, double tr_o2, double tr_rho_sq, int qubits) {
    if (!(tr_rho_sq > 0.0 && tr_rho_sq <= 1.0 + 1e-12)) throw DomainError("su_moments: tr(rho^2) must lie in (0, 1]");
    const double d = pow2(qubits);
    return {tr_o / d, (tr_o2 - tr_o * tr_o / d) * (tr_rho_sq - 1.0 / d) / (d * d - 1.0)};
}

VariancePrediction expressive_variance(double tr_o, double tr_o2, double tr_rho_sq, int qubits, int k,
                                       ExpressiveVariant variant) {
    if (k < 1) throw DomainError("expressive_variance: k must be >= 1");
    const double d = pow2(qubits);
    const bool traceless = std::abs(tr_o) <= 1e-12 * std::max(1.0, tr_o2);
    if (variant == ExpressiveVariant::TracelessOnly && !traceless)
        throw DomainError("expressive_variance: observable is not traceless (choose a variant explicitly)");
    if (variant == ExpressiveVariant::FromMoments) {
        const SuMoments m = su_moments(tr_o, tr_o2, tr_rho_sq, qubits);
        VariancePrediction v = lcu_variance_homogeneous(m.em, m.em2_centred + m.em * m.em,
                                                        su_cross_term(tr_o2, tr_rho_sq, d), k);
        v.formula_id = "dirichlet_lcu_var<-su_moments";
        return v;
    }
    const Rational den = k_cubic(k);
    const double first = to_double(Rational(24) / den) * (tr_o2 - tr_o * tr_o / d) * (tr_rho_sq - 1.0 / d) / (d * d - 1.0);
    const double second = to_double(Rational(4 * (k - 1)) / den) * (tr_o2 / d * tr_rho_sq + tr_o * tr_o) / d;
    return {first + second - tr_o * tr_o / d, "expressive_var"};
}

VariancePrediction incoherent_variance(const std::vector<double>& em, const std::vector<double>& em2, int k) {
    if (k < 1 || em.size() != static_cast<std::size_t>(k) || em2.size() != em.size())
        throw DomainError("incoherent_variance: lengths must equal k");
    const std::int64_t kk = k;
    const double a = to_double(Rational(2, kk * (kk + 1)));
    const double b = to_double(Rational(1, kk * kk));
    const double c = to_double(Rational(1, kk * kk * (kk + 1)));
    double v = 0.0;
    for (int i = 0; i < k; ++i) {
        v += a * em2[static_cast<std::size_t>(i)] - b * em[static_cast<std::size_t>(i)] * em[static_cast<std::size_t>(i)];
        for (int j = 0; j < k; ++j)
            if (i != j) v -= c * em[static_cast<std::size_t>(i)] * em[static_cast<std::size_t>(j)];
    }
    return {v, "app_general_incoherent_var_dirichhaar"};
}

LowerBound incoherent_bound(const std::vector<double>& vars, const std::vector<double>& ec, int k) {
    if (k < 1 || vars.size() != static_cast<std::size_t>(k) || ec.size() != vars.size())
        throw DomainError("incoherent_bound: lengths must equal k");
    double weighted = 0.0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] < 0.0) throw DomainError("incoherent_bound: negative variance");
        weighted += ec[i] * ec[i] * vars[i];
    }
    const double fallback = *std::min_element(vars.begin(), vars.end()) / k;
    return {weighted, fallback, std::max(weighted, fallback)};
}

}  // namespace lcu
