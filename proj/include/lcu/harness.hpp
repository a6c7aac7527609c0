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
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lcu/analytic.hpp"
#include "lcu/fock_oracle.hpp"
#include "lcu/gaussian_sim.hpp"
#include "lcu/polynomial.hpp"

namespace lcu {

enum class Group { SpecialOrthogonal, Unitary };
enum class Mode { Coherent, Incoherent };
enum class Backend { Gaussian, Dense, Both };

std::string to_string(Group g);
std::string to_string(Mode m);
std::string to_string(Backend b);
Group parse_group(const std::string& s);
Mode parse_mode(const std::string& s);
Backend parse_backend(const std::string& s);

struct SweepConfig {
    Group group = Group::SpecialOrthogonal;
    Mode mode = Mode::Coherent;
    std::vector<int> qubit_list{2, 4};
    std::vector<int> rank_list{1, 2};
    int samples = 1000;
    std::string observable = "Z1";
    Backend backend = Backend::Gaussian;
    std::uint64_t master_seed = 1;
    std::string output_path = "sweep.csv";
    int workers = 0;  // 0: hardware concurrency
    int dense_limit = kDefaultDenseLimit;
    int max_terms = 4;  // gaussian backend observable size limit

    // Throws ConfigError on any invariant violation.
    void validate() const;
    std::map<std::string, std::string> to_entries() const;
};

// Applies one key=value setting; unknown keys raise ConfigError.
void apply_config_entry(SweepConfig& cfg, const std::string& key, const std::string& value);

// Flat "key = value" file, '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::string& path);

// One (group, mode, backend, N, k) cell with its observable prepared.
struct CellSpec {
    Group group;
    Mode mode;
    Backend backend;
    int qubits;
    int k;
    std::string observable;
    std::uint64_t master_seed;
    int dense_limit = kDefaultDenseLimit;
    int max_terms = 4;

    std::uint64_t stream_index(std::uint64_t trial) const;
};

struct TrialResult {
    double m;
    double backend_deviation;  // |m_gaussian - m_dense| for Backend::Both, else 0
};

// Prepared per-cell data shared read-only between workers.
class CellContext {
public:
    explicit CellContext(CellSpec spec);
    const CellSpec& spec() const { return spec_; }
    const MajoranaPolynomial& polynomial() const { return poly_; }
    const ComplexMatrix& dense_observable() const;

private:
    CellSpec spec_;
    MajoranaPolynomial poly_;
    std::shared_ptr<ComplexMatrix> dense_;
};

TrialResult run_trial(const CellContext& cell, std::uint64_t trial_index);
double run_trial(const CellSpec& cell, std::uint64_t trial_index);

struct VarianceStats {
    double mean;
    double variance;     // unbiased
    double variance_se;  // fourth-moment estimator
};

VarianceStats variance_stats(const std::vector<double>& values);
double bootstrap_variance_se(const std::vector<double>& values, int resamples, std::uint64_t seed);

struct AnalyticCell {
    VariancePrediction variance;
    LowerBound bound;
    bool bound_applicable;  // the worst-case bounds need E[m_i] = 0
};

AnalyticCell analytic_for_cell(const CellSpec& cell);

struct VarianceReport {
    Group group;
    Mode mode;
    Backend backend;
    int n_qubits;
    int rank_k;
    int samples;
    std::uint64_t master_seed;
    double sample_mean;
    double sample_variance;
    double variance_se;
    double analytic_variance;
    double abs_rel_err;
    // Not part of the CSV contract.
    std::string formula_id;
    double lower_bound;
    bool bound_applicable;
    double max_backend_deviation;
    std::vector<double> values;
};

VarianceReport run_cell(const CellSpec& cell, int samples, int workers);
std::vector<VarianceReport> run_cells(const std::vector<CellSpec>& cells, int samples, int workers);
std::vector<VarianceReport> run_sweep(const SweepConfig& cfg);

struct BackendCheck {
    int qubits;
    int k;
    int trials;
    double max_m_deviation;
    double max_pair_deviation;
    std::uint64_t worst_stream;  // stream index of the worst instance
};

struct ValidationReport {
    std::vector<BackendCheck> checks;
    double threshold = 1e-8;
    bool passed() const;
};

ValidationReport validate_backends(int max_qubits, int trials, std::uint64_t seed,
                                   const std::string& observable = "Z1", int workers = 0);

void emit_csv(const std::vector<VarianceReport>& reports, const std::string& path,
              const std::map<std::string, std::string>& metadata = {});

std::string csv_header();
std::string format_number(double v);

// Cells whose sample variance is more than `sigma` standard errors from the
// analytic value; at most floor(cells/20) outliers (minimum one) may sit below
// `outlier_sigma`.
struct ToleranceVerdict {
    bool passed;
    int cells;
    int beyond_sigma;
    int beyond_outlier_sigma;
    int allowed_outliers;
};

ToleranceVerdict check_tolerance(const std::vector<VarianceReport>& reports, double sigma = 3.0,
                                 double outlier_sigma = 4.0);

// Default replication grid: N in {2,4,6,8,10,12}, k in {1,2,4,8}, O = Z1, SO,
// coherent; both backends up to N = 6, gaussian beyond.
std::vector<CellSpec> replication_cells(std::uint64_t seed);

}  // namespace lcu
