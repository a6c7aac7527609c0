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

#include <stdexcept>
#include <string>

namespace lcu {

// Invalid argument values (wrong sizes, k = 0, odd mode counts, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A documented precondition on matrix structure does not hold.
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// Singular input to a factorisation; callers resample.
struct DegenerateInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rotation has an eigenvalue at -1, so the principal logarithm is not unique.
struct BranchAmbiguityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Request exceeds the dense-backend size limit.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace lcu
