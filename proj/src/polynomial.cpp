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

#include "lcu/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "lcu/errors.hpp"

namespace lcu {

namespace {

int reversal_sign(MajoranaMask m) {
    const int d = mask_degree(m);
    return ((d * (d - 1) / 2) % 2 == 0) ? 1 : -1;
}

MajoranaPolynomial from_map(int modes, const std::map<MajoranaMask, cplx>& acc) {
    std::vector<MajoranaTerm> terms;
    for (const auto& [mask, c] : acc) terms.push_back({c, mask});
    return MajoranaPolynomial(modes, std::move(terms));
}

}  // namespace

std::pair<int, MajoranaMask> monomial_product(MajoranaMask a, MajoranaMask b) {
    int swaps = 0;
    for (MajoranaMask rest = b; rest != 0; rest &= rest - 1) {
        const int idx = __builtin_ctzll(rest);
        const MajoranaMask above = (idx >= 63) ? 0 : (~MajoranaMask(0) << (idx + 1));
        swaps += mask_degree(a & above);
    }
    return {(swaps % 2 == 0) ? 1 : -1, a ^ b};
}

MajoranaPolynomial::MajoranaPolynomial(int modes, std::vector<MajoranaTerm> terms) : modes_(modes) {
    if (modes < 2 || modes % 2 != 0 || modes > 64)
        throw DomainError("MajoranaPolynomial: modes must be even, in [2, 64]");
    const MajoranaMask allowed = (modes == 64) ? ~MajoranaMask(0) : ((MajoranaMask(1) << modes) - 1);
    std::map<MajoranaMask, cplx> acc;
    for (const auto& t : terms) {
        if (t.mask & ~allowed) throw DomainError("MajoranaPolynomial: mask exceeds mode count");
        acc[t.mask] += t.coeff;
    }
    for (const auto& [mask, c] : acc)
        if (c != cplx(0.0)) terms_.push_back({c, mask});
}

MajoranaPolynomial MajoranaPolynomial::identity(int modes) {
    return MajoranaPolynomial(modes, {{cplx(1.0), 0}});
}

MajoranaPolynomial MajoranaPolynomial::monomial(int modes, cplx coeff, MajoranaMask mask) {
    return MajoranaPolynomial(modes, {{coeff, mask}});
}

int MajoranaPolynomial::max_degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, mask_degree(t.mask));
    return d;
}

cplx MajoranaPolynomial::coefficient(MajoranaMask mask) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), mask,
                               [](const MajoranaTerm& t, MajoranaMask m) { return t.mask < m; });
    return (it != terms_.end() && it->mask == mask) ? it->coeff : cplx(0.0);
}

bool MajoranaPolynomial::hermitian(double tolerance) const {
    for (const auto& t : terms_)
        if (std::abs(std::conj(t.coeff) * double(reversal_sign(t.mask)) - t.coeff) > tolerance) return false;
    return true;
}

MajoranaPolynomial MajoranaPolynomial::operator+(const MajoranaPolynomial& other) const {
    if (other.modes_ != modes_) throw DomainError("MajoranaPolynomial: mode mismatch");
    std::vector<MajoranaTerm> all = terms_;
    all.insert(all.end(), other.terms_.begin(), other.terms_.end());
    return MajoranaPolynomial(modes_, std::move(all));
}

MajoranaPolynomial MajoranaPolynomial::operator*(const MajoranaPolynomial& other) const {
    if (other.modes_ != modes_) throw DomainError("MajoranaPolynomial: mode mismatch");
    std::map<MajoranaMask, cplx> acc;
    for (const auto& x : terms_)
        for (const auto& y : other.terms_) {
            const auto [s, m] = monomial_product(x.mask, y.mask);
            acc[m] += double(s) * x.coeff * y.coeff;
        }
    return from_map(modes_, acc);
}

MajoranaPolynomial MajoranaPolynomial::scaled(cplx factor) const {
    std::vector<MajoranaTerm> t = terms_;
    for (auto& x : t) x.coeff *= factor;
    return MajoranaPolynomial(modes_, std::move(t));
}

MajoranaPolynomial MajoranaPolynomial::adjoint() const {
    std::vector<MajoranaTerm> t = terms_;
    for (auto& x : t) x.coeff = std::conj(x.coeff) * double(reversal_sign(x.mask));
    return MajoranaPolynomial(modes_, std::move(t));
}

MajoranaPolynomial parse_pauli_observable(const std::string& text, int qubits) {
    if (qubits < 1 || qubits > 32) throw DomainError("observable: qubit count out of range");
    const int modes = 2 * qubits;
    const cplx mi(0.0, -1.0);
    auto z_string = [&](int upto) {  // Z_1 ... Z_{upto}
        MajoranaPolynomial p = MajoranaPolynomial::identity(modes);
        for (int q = 0; q < upto; ++q)
            p = p * MajoranaPolynomial::monomial(modes, mi, MajoranaMask(3) << (2 * q));
        return p;
    };

    MajoranaPolynomial result = MajoranaPolynomial::identity(modes);
    std::vector<bool> used(static_cast<std::size_t>(qubits), false);
    std::size_t pos = 0;
    bool any = false;
    while (pos < text.size()) {
        const char op = static_cast<char>(std::toupper(static_cast<unsigned char>(text[pos])));
        if (std::isspace(static_cast<unsigned char>(text[pos]))) { ++pos; continue; }
        if (op == 'I' && text.size() == 1) return result;
        if (op != 'X' && op != 'Y' && op != 'Z')
            throw DomainError("observable: expected X, Y or Z in '" + text + "'");
        ++pos;
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw DomainError("observable: missing qubit index in '" + text + "'");
        const int q = std::stoi(text.substr(start, pos - start));
        if (q < 1 || q > qubits) throw DomainError("observable: qubit index out of range in '" + text + "'");
        if (used[static_cast<std::size_t>(q - 1)]) throw DomainError("observable: repeated qubit in '" + text + "'");
        used[static_cast<std::size_t>(q - 1)] = true;
        const int j = q - 1;
        MajoranaPolynomial factor = MajoranaPolynomial::identity(modes);
        if (op == 'Z') {
            factor = MajoranaPolynomial::monomial(modes, mi, MajoranaMask(3) << (2 * j));
        } else {
            const MajoranaMask m = MajoranaMask(1) << (2 * j + (op == 'Y' ? 1 : 0));
            factor = z_string(j) * MajoranaPolynomial::monomial(modes, 1.0, m);
        }
        result = result * factor;
        any = true;
    }
    if (!any) throw DomainError("observable: empty Pauli string");
    return result;
}

MajoranaPolynomial parity_polynomial(int qubits) {
    const int modes = 2 * qubits;
    const MajoranaMask full = (modes == 64) ? ~MajoranaMask(0) : ((MajoranaMask(1) << modes) - 1);
    cplx ph(1.0);
    for (int i = 0; i < qubits; ++i) ph *= cplx(0.0, -1.0);
    return MajoranaPolynomial::monomial(modes, ph, full);
}

}  // namespace lcu
