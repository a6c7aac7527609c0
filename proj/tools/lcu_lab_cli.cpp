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

// lcu-lab: sweeps, closed-form tables, backend validation and the default
// replication grid. Exit codes: 0 ok, 1 configuration error, 2 tolerance
// failure.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "lcu/errors.hpp"
#include "lcu/harness.hpp"

using namespace lcu;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitTolerance = 2;

// Raw flag values; each set flag is routed through apply_config_entry so the
// file and the command line share one parser.
struct Flags {
    std::map<std::string, std::string> values;
    std::string config_path;

    void add(CLI::App* cmd, const std::string& key, const std::string& help) {
        cmd->add_option("--" + key, values[key], help);
    }
};

SweepConfig resolve(const Flags& f, CLI::App* cmd) {
    SweepConfig cfg;
    if (!f.config_path.empty())
        for (const auto& [k, v] : read_config_file(f.config_path)) apply_config_entry(cfg, k, v);
    for (const auto& [k, v] : f.values)
        if (cmd->count("--" + k) > 0) apply_config_entry(cfg, k, v);
    cfg.validate();
    return cfg;
}

void add_sweep_flags(CLI::App* cmd, Flags& f) {
    f.add(cmd, "group", "special_orthogonal | unitary");
    f.add(cmd, "mode", "coherent | incoherent");
    f.add(cmd, "qubits", "comma-separated qubit counts");
    f.add(cmd, "ranks", "comma-separated LCU ranks k");
    f.add(cmd, "samples", "trials per cell");
    f.add(cmd, "seed", "master seed (unsigned 64-bit)");
    f.add(cmd, "observable", "Pauli string, e.g. Z1 or X1Y2");
    f.add(cmd, "backend", "gaussian | dense | both");
    f.add(cmd, "out", "CSV output path");
    f.add(cmd, "workers", "worker threads, 0 = hardware concurrency");
    cmd->add_option("--config", f.config_path, "key = value file; flags override it");
}

void print_reports(const std::vector<VarianceReport>& reps) {
    std::printf("%4s %4s %14s %12s %14s %8s %8s\n", "N", "k", "sample_var", "se", "analytic", "z", "formula");
    for (const auto& r : reps)
        std::printf("%4d %4d %14.8g %12.4g %14.8g %8.2f  %s\n", r.n_qubits, r.rank_k, r.sample_variance,
                    r.variance_se, r.analytic_variance,
                    std::abs(r.sample_variance - r.analytic_variance) / r.variance_se, r.formula_id.c_str());
}

int run_sweep_cmd(const Flags& f, CLI::App* cmd) {
    const SweepConfig cfg = resolve(f, cmd);
    const auto reps = run_sweep(cfg);
    emit_csv(reps, cfg.output_path, cfg.to_entries());
    print_reports(reps);
    std::printf("wrote %s\n", cfg.output_path.c_str());
    return kExitOk;
}

int run_analytic_cmd(const Flags& f, CLI::App* cmd) {
    SweepConfig cfg = resolve(f, cmd);
    std::printf("%4s %4s %16s %16s %16s  %s\n", "N", "k", "variance", "lower_bound", "alt_2^(N-2)", "formula");
    for (int n : cfg.qubit_list)
        for (int k : cfg.rank_list) {
            const CellSpec cell{cfg.group, cfg.mode, cfg.backend, n, k, cfg.observable, cfg.master_seed,
                                cfg.dense_limit, cfg.max_terms};
            const AnalyticCell a = analytic_for_cell(cell);
            std::string alt = "-";
            if (cfg.group == Group::SpecialOrthogonal && cfg.mode == Mode::Coherent &&
                a.variance.formula_id == "ffvar") {
                const double scale = ff_lcu_variance(n, k, 1.0).value;
                alt = std::to_string(ff_lcu_variance_alt_denominator(n, k, 1.0).value * a.variance.value / scale);
            }
            std::printf("%4d %4d %16.10g %16.10g %16s  %s%s\n", n, k, a.variance.value, a.bound.certified,
                        alt.c_str(), a.variance.formula_id.c_str(), a.bound_applicable ? "" : " (bound n/a)");
        }
    return kExitOk;
}

int run_validate_cmd(int max_qubits, int trials, std::uint64_t seed, const std::string& observable, int workers) {
    const ValidationReport rep = validate_backends(max_qubits, trials, seed, observable, workers);
    std::printf("%4s %4s %7s %12s %12s %s\n", "N", "k", "trials", "max|dm|", "max|dm_ij|", "worst_stream");
    for (const auto& c : rep.checks)
        std::printf("%4d %4d %7d %12.3e %12.3e %llu\n", c.qubits, c.k, c.trials, c.max_m_deviation,
                    c.max_pair_deviation, static_cast<unsigned long long>(c.worst_stream));
    std::printf("%s (threshold %.0e)\n", rep.passed() ? "PASS" : "FAIL", rep.threshold);
    return rep.passed() ? kExitOk : kExitTolerance;
}

int run_replicate_cmd(int samples, std::uint64_t seed, const std::string& out, int workers) {
    if (samples < 2) throw ConfigError("samples must be >= 2");
    const auto reps = run_cells(replication_cells(seed), samples, workers);
    std::map<std::string, std::string> meta{{"preset", "replication-grid"},
                                            {"samples", std::to_string(samples)},
                                            {"seed", std::to_string(seed)},
                                            {"observable", "Z1"}};
    emit_csv(reps, out, meta);
    print_reports(reps);
    const ToleranceVerdict v = check_tolerance(reps);
    std::printf("cells=%d beyond 3 SE=%d beyond 4 SE=%d allowed=%d -> %s\nwrote %s\n", v.cells, v.beyond_sigma,
                v.beyond_outlier_sigma, v.allowed_outliers, v.passed ? "PASS" : "FAIL", out.c_str());
    return v.passed ? kExitOk : kExitTolerance;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lcu-lab: variance of LCU expectation values over random fermionic Gaussian branches"};
    app.require_subcommand(1);

    Flags sweep_flags, analytic_flags;
    CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over (N, k), writes CSV");
    add_sweep_flags(sweep, sweep_flags);
    CLI::App* analytic = app.add_subcommand("analytic", "closed-form variance table for a grid");
    add_sweep_flags(analytic, analytic_flags);

    CLI::App* validate = app.add_subcommand("validate", "gaussian vs dense backend equivalence gate");
    int max_qubits = 6, trials = 100, v_workers = 0;
    std::uint64_t v_seed = 1;
    std::string v_obs = "Z1";
    validate->add_option("--qubits", max_qubits, "largest N checked");
    validate->add_option("--samples", trials, "instances per (N, k)");
    validate->add_option("--seed", v_seed, "master seed");
    validate->add_option("--observable", v_obs, "Pauli string");
    validate->add_option("--workers", v_workers, "worker threads");

    CLI::App* replicate = app.add_subcommand("replicate-fig1", "default replication grid against the closed form");
    int f_samples = 1000, f_workers = 0;
    std::uint64_t f_seed = 1;
    std::string f_out = "replication.csv";
    replicate->add_option("--samples", f_samples, "trials per cell");
    replicate->add_option("--seed", f_seed, "master seed");
    replicate->add_option("--out", f_out, "CSV output path");
    replicate->add_option("--workers", f_workers, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*sweep) return run_sweep_cmd(sweep_flags, sweep);
        if (*analytic) return run_analytic_cmd(analytic_flags, analytic);
        if (*validate) return run_validate_cmd(max_qubits, trials, v_seed, v_obs, v_workers);
        if (*replicate) return run_replicate_cmd(f_samples, f_seed, f_out, f_workers);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitOk;
}
