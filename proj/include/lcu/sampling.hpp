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
#include <random>
#include <vector>

#include "lcu/linalg.hpp"

namespace lcu {

// l1-normalised nonnegative LCU weights.
class CoefficientVector {
public:
    explicit CoefficientVector(std::vector<double> values);

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
};

// Element of SO(2N) acting on the 2N Majorana modes.
class MajoranaRotation {
public:
    explicit MajoranaRotation(RealMatrix matrix, double tolerance = tol::kOrthogonal);
    static MajoranaRotation identity(int modes);

    const RealMatrix& matrix() const { return matrix_; }
    int modes() const { return static_cast<int>(matrix_.rows()); }

private:
    RealMatrix matrix_;
};

// Deterministic stream keyed by (master_seed, stream_index).
class SeededRng {
public:
    SeededRng(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    double normal();
    double exponential();
    int sign();  // uniform on {-1, +1}
    std::mt19937_64& engine() { return engine_; }

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::mt19937_64 engine_;
};

CoefficientVector sample_dirichlet_uniform(int k, SeededRng& rng);

MajoranaRotation sample_haar_special_orthogonal(int modes, SeededRng& rng);

ComplexMatrix sample_haar_unitary(int dim, SeededRng& rng);

// Haar element of Spin(2N): a Haar rotation together with a uniform sign
// selecting one of the two Fock-space lifts. The principal lift alone is not
// Haar distributed on the group generated by quadratic Hamiltonians.
struct SpinElement {
    MajoranaRotation rotation;
    int sign;
};

SpinElement sample_haar_spin(int modes, SeededRng& rng);

}  // namespace lcu
