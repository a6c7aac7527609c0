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

#include "lcu/sampling.hpp"

#include <cmath>
#include <numeric>

#include "lcu/errors.hpp"

namespace lcu {

CoefficientVector::CoefficientVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw DomainError("CoefficientVector: empty");
    double sum = 0.0;
    for (double v : values_) {
        if (!(v >= 0.0)) throw DomainError("CoefficientVector: negative or NaN weight");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw DomainError("CoefficientVector: weights do not sum to 1");
}

MajoranaRotation::MajoranaRotation(RealMatrix matrix, double tolerance) : matrix_(std::move(matrix)) {
    if (matrix_.rows() % 2 != 0 || matrix_.rows() == 0)
        throw DomainError("MajoranaRotation: dimension must be even and positive");
    if (!is_special_orthogonal(matrix_, tolerance))
        throw ContractViolation("MajoranaRotation: matrix is not in SO(2N)");
}

MajoranaRotation MajoranaRotation::identity(int modes) {
    return MajoranaRotation(RealMatrix::Identity(modes, modes));
}

SeededRng::SeededRng(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(stream_index), static_cast<std::uint32_t>(stream_index >> 32)};
    engine_.seed(seq);
}

double SeededRng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

double SeededRng::exponential() { return std::exponential_distribution<double>(1.0)(engine_); }

int SeededRng::sign() { return (engine_() >> 63) ? 1 : -1; }

CoefficientVector sample_dirichlet_uniform(int k, SeededRng& rng) {
    if (k < 1) throw DomainError("sample_dirichlet_uniform: k must be >= 1");
    std::vector<double> e(static_cast<std::size_t>(k));
    for (double& x : e) x = rng.exponential();
    const double total = std::accumulate(e.begin(), e.end(), 0.0);
    for (double& x : e) x /= total;
    return CoefficientVector(std::move(e));
}

MajoranaRotation sample_haar_special_orthogonal(int modes, SeededRng& rng) {
    if (modes < 2 || modes % 2 != 0)
        throw DomainError("sample_haar_special_orthogonal: modes must be even and >= 2");
    for (;;) {
        RealMatrix g(modes, modes);
        for (Eigen::Index j = 0; j < g.cols(); ++j)
            for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = rng.normal();
        try {
            RealMatrix q = qr_unitary(g, true).first;
            // Reflection of the first axis maps O(n)^- onto SO(n), preserving Haar measure.
            if (q.determinant() < 0.0) q.row(0) *= -1.0;
            return MajoranaRotation(std::move(q));
        } catch (const DegenerateInputError&) {
            continue;
        }
    }
}

ComplexMatrix sample_haar_unitary(int dim, SeededRng& rng) {
    if (dim < 2) throw DomainError("sample_haar_unitary: dim must be >= 2");
    const double s = std::sqrt(0.5);
    for (;;) {
        ComplexMatrix g(dim, dim);
        for (Eigen::Index j = 0; j < g.cols(); ++j)
            for (Eigen::Index i = 0; i < g.rows(); ++i) {
                const double re = rng.normal();
                const double im = rng.normal();
                g(i, j) = cplx(s * re, s * im);
            }
        try {
            return qr_unitary(g, true).first;
        } catch (const DegenerateInputError&) {
            continue;
        }
    }
}

SpinElement sample_haar_spin(int modes, SeededRng& rng) {
    MajoranaRotation r = sample_haar_special_orthogonal(modes, rng);
    const int s = rng.sign();
    return {std::move(r), s};
}

}  // namespace lcu
