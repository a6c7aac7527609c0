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

#include "lcu/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "lcu/errors.hpp"

namespace lcu {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("config: '" + key + "' expects a comma-separated integer list, got '" + value + "'");
        }
    }
    if (out.empty()) throw ConfigError("config: '" + key + "' is empty");
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        const std::string t = trim(value);
        if (t.empty() || t.front() < '0' || t.front() > '9') throw std::invalid_argument(value);
        std::size_t used = 0;
        const unsigned long long v = std::stoull(t, &used, 10);
        if (used != t.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: '" + key + "' expects an unsigned integer, got '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    const std::uint64_t v = parse_u64(key, value);
    if (v > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
        throw ConfigError("config: '" + key + "' out of range");
    return static_cast<int>(v);
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

int resolve_workers(int workers) {
    if (workers > 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(i) for i in [0, count) on up to `workers` threads. Each index
// writes only its own slot, so results do not depend on scheduling.
template <typename Body>
void parallel_for(std::size_t count, int workers, Body body) {
    const int w = std::min<int>(resolve_workers(workers), static_cast<int>(std::max<std::size_t>(count, 1)));
    if (w <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(w));
    for (int t = 0; t < w; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next.store(count);
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

bool is_quadratic(const MajoranaPolynomial& p) {
    for (const auto& t : p.terms())
        if (mask_degree(t.mask) != 2) return false;
    return !p.terms().empty();
}

struct Branches {
    CoefficientVector c;
    std::vector<SpinElement> spins;        // special orthogonal group
    std::vector<ComplexMatrix> unitaries;  // unitary group
};

Branches draw_branches(const CellSpec& cell, std::uint64_t trial) {
    SeededRng rng(cell.master_seed, cell.stream_index(trial));
    CoefficientVector c = sample_dirichlet_uniform(cell.k, rng);
    Branches b{std::move(c), {}, {}};
    for (int i = 0; i < cell.k; ++i) {
        if (cell.group == Group::SpecialOrthogonal)
            b.spins.push_back(sample_haar_spin(2 * cell.qubits, rng));
        else
            b.unitaries.push_back(sample_haar_unitary(1 << cell.qubits, rng));
    }
    return b;
}

std::vector<GaussianState> gaussian_branches(const Branches& b, int qubits) {
    const GaussianState vac = vacuum(qubits);
    std::vector<GaussianState> states;
    for (const auto& s : b.spins) states.push_back(with_phase(apply_rotation(vac, s.rotation), double(s.sign)));
    return states;
}

std::vector<DenseState> dense_branches(const Branches& b, const CellSpec& cell) {
    std::vector<DenseState> states;
    if (cell.group == Group::SpecialOrthogonal) {
        for (const auto& s : b.spins) {
            const ComplexMatrix u = gaussian_unitary_from_rotation(s.rotation, cell.dense_limit);
            states.push_back(DenseState{double(s.sign) * u.col(0)});
        }
    } else {
        for (const auto& u : b.unitaries) states.push_back(DenseState{u.col(0)});
    }
    return states;
}

double gaussian_value(const CellContext& ctx, const Branches& b) {
    const auto states = gaussian_branches(b, ctx.spec().qubits);
    if (ctx.spec().mode == Mode::Coherent) return lcu_expectation(b.c, states, ctx.polynomial()).m;
    double m = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i)
        m += b.c[i] * matrix_element(states[i], ctx.polynomial(), states[i]).real();
    return m;
}

double dense_value(const CellContext& ctx, const Branches& b) {
    const auto states = dense_branches(b, ctx.spec());
    const ComplexMatrix& o = ctx.dense_observable();
    if (ctx.spec().mode == Mode::Coherent) {
        DenseState psi{ComplexVector::Zero(o.rows())};
        for (std::size_t i = 0; i < states.size(); ++i) psi.amplitudes += b.c[i] * states[i].amplitudes;
        return expectation(psi, o);
    }
    double m = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) m += b.c[i] * expectation(states[i], o);
    return m;
}

}  // namespace

std::string to_string(Group g) { return g == Group::SpecialOrthogonal ? "special_orthogonal" : "unitary"; }
std::string to_string(Mode m) { return m == Mode::Coherent ? "coherent" : "incoherent"; }
std::string to_string(Backend b) {
    switch (b) {
        case Backend::Gaussian: return "gaussian";
        case Backend::Dense: return "dense";
        default: return "both";
    }
}

Group parse_group(const std::string& s) {
    if (s == "special_orthogonal" || s == "so" || s == "SO") return Group::SpecialOrthogonal;
    if (s == "unitary" || s == "su" || s == "SU" || s == "u") return Group::Unitary;
    throw ConfigError("unknown group '" + s + "' (special_orthogonal | unitary)");
}

Mode parse_mode(const std::string& s) {
    if (s == "coherent") return Mode::Coherent;
    if (s == "incoherent") return Mode::Incoherent;
    throw ConfigError("unknown mode '" + s + "' (coherent | incoherent)");
}

Backend parse_backend(const std::string& s) {
    if (s == "gaussian") return Backend::Gaussian;
    if (s == "dense") return Backend::Dense;
    if (s == "both") return Backend::Both;
    throw ConfigError("unknown backend '" + s + "' (gaussian | dense | both)");
}

void SweepConfig::validate() const {
    if (samples < 2) throw ConfigError("samples must be >= 2");
    if (qubit_list.empty() || rank_list.empty()) throw ConfigError("qubit and rank lists must be nonempty");
    if (dense_limit < 1) throw ConfigError("dense_limit must be >= 1");
    for (int k : rank_list)
        if (k < 1 || k > 4095) throw ConfigError("ranks must lie in [1, 4095]");
    if (group == Group::Unitary && backend != Backend::Dense)
        throw ConfigError("the unitary group requires the dense backend");
    if (backend == Backend::Gaussian && group != Group::SpecialOrthogonal)
        throw ConfigError("the gaussian backend requires group = special_orthogonal");
    for (int n : qubit_list) {
        if (n < 1 || n > 32) throw ConfigError("qubit counts must lie in [1, 32]");
        if (backend != Backend::Gaussian && n > dense_limit)
            throw ConfigError("N = " + std::to_string(n) + " exceeds the dense limit " + std::to_string(dense_limit));
        MajoranaPolynomial p = MajoranaPolynomial::identity(2 * n);
        try {
            p = parse_pauli_observable(observable, n);
        } catch (const DomainError& e) {
            throw ConfigError(std::string("observable: ") + e.what());
        }
        if (!p.hermitian()) throw ConfigError("observable is not Hermitian");
        if (backend != Backend::Dense && static_cast<int>(p.terms().size()) > max_terms)
            throw ConfigError("observable exceeds the gaussian backend term limit");
    }
}

std::map<std::string, std::string> SweepConfig::to_entries() const {
    return {{"group", to_string(group)},
            {"mode", to_string(mode)},
            {"qubits", join(qubit_list)},
            {"ranks", join(rank_list)},
            {"samples", std::to_string(samples)},
            {"observable", observable},
            {"backend", to_string(backend)},
            {"seed", std::to_string(master_seed)},
            {"out", output_path},
            {"workers", std::to_string(workers)},
            {"dense_limit", std::to_string(dense_limit)},
            {"max_terms", std::to_string(max_terms)}};
}

void apply_config_entry(SweepConfig& cfg, const std::string& key_in, const std::string& value_in) {
    const std::string key = trim(key_in);
    const std::string value = trim(value_in);
    if (key == "group") cfg.group = parse_group(value);
    else if (key == "mode") cfg.mode = parse_mode(value);
    else if (key == "qubits") cfg.qubit_list = parse_int_list(key, value);
    else if (key == "ranks") cfg.rank_list = parse_int_list(key, value);
    else if (key == "samples") cfg.samples = parse_int(key, value);
    else if (key == "observable") cfg.observable = value;
    else if (key == "backend") cfg.backend = parse_backend(value);
    else if (key == "seed") cfg.master_seed = parse_u64(key, value);
    else if (key == "out") cfg.output_path = value;
    else if (key == "workers") cfg.workers = parse_int(key, value);
    else if (key == "dense_limit") cfg.dense_limit = parse_int(key, value);
    else if (key == "max_terms") cfg.max_terms = parse_int(key, value);
    else throw ConfigError("unknown config key '" + key + "'");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

std::uint64_t CellSpec::stream_index(std::uint64_t trial) const {
    const std::uint64_t tag = (static_cast<std::uint64_t>(group == Group::Unitary) << 1) |
                              static_cast<std::uint64_t>(mode == Mode::Incoherent);
    const std::uint64_t cell_key = (tag << 24) | (static_cast<std::uint64_t>(qubits) << 12) |
                                   static_cast<std::uint64_t>(k);
    return (cell_key << 32) | (trial & 0xffffffffULL);
}

CellContext::CellContext(CellSpec spec)
    : spec_(std::move(spec)), poly_(parse_pauli_observable(spec_.observable, spec_.qubits)) {
    if (spec_.backend != Backend::Gaussian || spec_.group == Group::Unitary)
        dense_ = std::make_shared<ComplexMatrix>(polynomial_to_operator(poly_, spec_.dense_limit));
}

const ComplexMatrix& CellContext::dense_observable() const {
    if (!dense_) throw ContractViolation("cell has no dense observable");
    return *dense_;
}

TrialResult run_trial(const CellContext& cell, std::uint64_t trial_index) {
    const Branches b = draw_branches(cell.spec(), trial_index);
    if (cell.spec().group == Group::Unitary) return {dense_value(cell, b), 0.0};
    switch (cell.spec().backend) {
        case Backend::Gaussian: return {gaussian_value(cell, b), 0.0};
        case Backend::Dense: return {dense_value(cell, b), 0.0};
        default: {
            const double g = gaussian_value(cell, b);
            const double d = dense_value(cell, b);
            return {g, std::abs(g - d)};
        }
    }
}

double run_trial(const CellSpec& cell, std::uint64_t trial_index) {
    return run_trial(CellContext(cell), trial_index).m;
}

VarianceStats variance_stats(const std::vector<double>& v) {
    const double s = static_cast<double>(v.size());
    if (v.size() < 2) throw DomainError("variance_stats: need at least two samples");
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / s;
    double m2 = 0.0, m4 = 0.0;
    for (double x : v) {
        const double d = x - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    const double var = m2 / (s - 1.0);
    m4 /= s;
    double se2 = (m4 - var * var * (s - 3.0) / (s - 1.0)) / s;
    if (!(se2 > 0.0)) se2 = std::numeric_limits<double>::min();
    return {mean, var, std::sqrt(se2)};
}

double bootstrap_variance_se(const std::vector<double>& values, int resamples, std::uint64_t seed) {
    if (values.size() < 2 || resamples < 2) throw DomainError("bootstrap_variance_se: too few samples");
    SeededRng rng(seed, 0);
    std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
    std::vector<double> vars;
    std::vector<double> draw(values.size());
    for (int r = 0; r < resamples; ++r) {
        for (double& x : draw) x = values[pick(rng.engine())];
        vars.push_back(variance_stats(draw).variance);
    }
    return std::sqrt(variance_stats(vars).variance);
}

AnalyticCell analytic_for_cell(const CellSpec& cell) {
    const MajoranaPolynomial p = parse_pauli_observable(cell.observable, cell.qubits);
    const int n = cell.qubits, k = cell.k;
    const double d = std::ldexp(1.0, n);
    const TraceData td = vacuum_trace_data(p);

    double em = 0.0, em2 = 0.0;
    VariancePrediction coherent{0.0, ""};
    if (cell.group == Group::SpecialOrthogonal) {
        const SoMoments mom = so_moments(p, n);
        em = mom.em;
        em2 = mom.em2;
        if (cell.mode == Mode::Coherent)
            coherent = is_quadratic(p) ? ff_lcu_variance(n, k, td.tr_o2 / d)
                                       : general_ff_variance(p, td, n, k).rederived;
    } else {
        const double tr_o = d * p.coefficient(0).real();
        const SuMoments mom = su_moments(tr_o, td.tr_o2, 1.0, n);
        em = mom.em;
        em2 = mom.em2_centred + mom.em * mom.em;
        if (cell.mode == Mode::Coherent) {
            const bool traceless = std::abs(tr_o) < 1e-12;
            coherent = expressive_variance(tr_o, td.tr_o2, 1.0, n, k,
                                           traceless ? ExpressiveVariant::TracelessOnly : ExpressiveVariant::FromMoments);
        }
    }
    const double var1 = std::max(0.0, em2 - em * em);
    AnalyticCell out{coherent, {}, std::abs(em) < 1e-12};
    const std::vector<double> vars(static_cast<std::size_t>(k), var1);
    if (cell.mode == Mode::Coherent) {
        out.bound = worst_case_lower_bound(vars, std::vector<double>(vars.size(), to_double(dirichlet_moment(k, 2))));
    } else {
        out.variance = incoherent_variance(std::vector<double>(vars.size(), em), std::vector<double>(vars.size(), em2), k);
        out.bound = incoherent_bound(vars, std::vector<double>(vars.size(), 1.0 / k), k);
    }
    return out;
}

VarianceReport run_cell(const CellSpec& cell, int samples, int workers) {
    if (samples < 2) throw ConfigError("samples must be >= 2");
    const CellContext ctx(cell);
    std::vector<double> values(static_cast<std::size_t>(samples));
    std::vector<double> dev(static_cast<std::size_t>(samples), 0.0);
    parallel_for(values.size(), workers, [&](std::size_t i) {
        const TrialResult r = run_trial(ctx, i);
        values[i] = r.m;
        dev[i] = r.backend_deviation;
    });
    const VarianceStats st = variance_stats(values);
    const AnalyticCell an = analytic_for_cell(cell);
    VarianceReport rep{cell.group, cell.mode, cell.backend, cell.qubits, cell.k, samples, cell.master_seed,
                       st.mean, st.variance, st.variance_se, an.variance.value,
                       an.variance.value > 0.0 ? std::abs(st.variance - an.variance.value) / an.variance.value
                                               : std::numeric_limits<double>::quiet_NaN(),
                       an.variance.formula_id, an.bound.certified, an.bound_applicable,
                       *std::max_element(dev.begin(), dev.end()), std::move(values)};
    return rep;
}

std::vector<VarianceReport> run_cells(const std::vector<CellSpec>& cells, int samples, int workers) {
    std::vector<VarianceReport> out;
    out.reserve(cells.size());
    for (const auto& c : cells) out.push_back(run_cell(c, samples, workers));
    std::stable_sort(out.begin(), out.end(), [](const VarianceReport& a, const VarianceReport& b) {
        return std::tie(a.n_qubits, a.rank_k) < std::tie(b.n_qubits, b.rank_k);
    });
    return out;
}

std::vector<VarianceReport> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    std::vector<CellSpec> cells;
    for (int n : cfg.qubit_list)
        for (int k : cfg.rank_list)
            cells.push_back({cfg.group, cfg.mode, cfg.backend, n, k, cfg.observable, cfg.master_seed,
                             cfg.dense_limit, cfg.max_terms});
    return run_cells(cells, cfg.samples, cfg.workers);
}

bool ValidationReport::passed() const {
    for (const auto& c : checks)
        if (!(c.max_m_deviation < threshold) || !(c.max_pair_deviation < threshold)) return false;
    return !checks.empty();
}

ValidationReport validate_backends(int max_qubits, int trials, std::uint64_t seed, const std::string& observable,
                                   int workers) {
    if (max_qubits < 1 || max_qubits > kDefaultDenseLimit)
        throw ConfigError("validate: max_N must lie in [1, dense limit]");
    if (trials < 1) throw ConfigError("validate: trials must be >= 1");
    ValidationReport rep;
    for (int n = 1; n <= max_qubits; ++n)
        for (int k : {1, 2, 4}) {
            const CellSpec cell{Group::SpecialOrthogonal, Mode::Coherent, Backend::Both, n, k, observable, seed};
            const CellContext ctx(cell);
            std::vector<double> dm(static_cast<std::size_t>(trials)), dp(static_cast<std::size_t>(trials));
            parallel_for(dm.size(), workers, [&](std::size_t t) {
                const Branches b = draw_branches(cell, t);
                const auto gs = gaussian_branches(b, n);
                const auto ds = dense_branches(b, cell);
                const LcuExpectation ge = lcu_expectation(b.c, gs, ctx.polynomial(), false);
                const ComplexMatrix& o = ctx.dense_observable();
                DenseState psi{ComplexVector::Zero(o.rows())};
                double pair = 0.0;
                for (int i = 0; i < k; ++i) {
                    psi.amplitudes += b.c[static_cast<std::size_t>(i)] * ds[static_cast<std::size_t>(i)].amplitudes;
                    const ComplexVector oi = o * ds[static_cast<std::size_t>(i)].amplitudes;
                    for (int j = 0; j < k; ++j) {
                        const cplx mij = ds[static_cast<std::size_t>(j)].amplitudes.dot(oi);
                        pair = std::max(pair, std::abs(mij - ge.components(i, j)));
                    }
                }
                dm[t] = std::abs(ge.m - expectation(psi, o));
                dp[t] = pair;
            });
            BackendCheck c{n, k, trials, 0.0, 0.0, cell.stream_index(0)};
            for (std::size_t t = 0; t < dm.size(); ++t) {
                if (std::max(dm[t], dp[t]) > std::max(c.max_m_deviation, c.max_pair_deviation))
                    c.worst_stream = cell.stream_index(t);
                c.max_m_deviation = std::max(c.max_m_deviation, dm[t]);
                c.max_pair_deviation = std::max(c.max_pair_deviation, dp[t]);
            }
            rep.checks.push_back(c);
        }
    return rep;
}

std::string format_number(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

std::string csv_header() {
    return "group,mode,backend,n_qubits,rank_k,samples,seed,sample_mean,sample_variance,variance_se,"
           "analytic_variance,abs_rel_err";
}

void emit_csv(const std::vector<VarianceReport>& reports, const std::string& path,
              const std::map<std::string, std::string>& metadata) {
    if (reports.empty()) throw DomainError("emit_csv: no reports");
    std::vector<const VarianceReport*> rows;
    for (const auto& r : reports) rows.push_back(&r);
    std::stable_sort(rows.begin(), rows.end(), [](const VarianceReport* a, const VarianceReport* b) {
        return std::tie(a->n_qubits, a->rank_k) < std::tie(b->n_qubits, b->rank_k);
    });
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << csv_header() << '\n';
    for (const auto* r : rows)
        out << to_string(r->group) << ',' << to_string(r->mode) << ',' << to_string(r->backend) << ','
            << r->n_qubits << ',' << r->rank_k << ',' << r->samples << ',' << r->master_seed << ','
            << format_number(r->sample_mean) << ',' << format_number(r->sample_variance) << ','
            << format_number(r->variance_se) << ',' << format_number(r->analytic_variance) << ','
            << format_number(r->abs_rel_err) << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");

    std::ofstream meta(path + ".meta", std::ios::binary | std::ios::trunc);
    if (!meta) throw IoError("cannot write '" + path + ".meta'");
    for (const auto& [k, v] : metadata) meta << k << " = " << v << '\n';
    for (const auto* r : rows)
        meta << "cell." << r->n_qubits << '.' << r->rank_k << ".formula = " << r->formula_id << '\n';
}

ToleranceVerdict check_tolerance(const std::vector<VarianceReport>& reports, double sigma, double outlier_sigma) {
    ToleranceVerdict v{true, static_cast<int>(reports.size()), 0, 0, std::max(1, static_cast<int>(reports.size()) / 20)};
    for (const auto& r : reports) {
        const double z = std::abs(r.sample_variance - r.analytic_variance) / r.variance_se;
        if (!(z <= sigma)) ++v.beyond_sigma;
        if (!(z <= outlier_sigma)) ++v.beyond_outlier_sigma;
    }
    v.passed = v.beyond_outlier_sigma == 0 && v.beyond_sigma <= v.allowed_outliers;
    return v;
}

std::vector<CellSpec> replication_cells(std::uint64_t seed) {
    std::vector<CellSpec> cells;
    for (int n : {2, 4, 6, 8, 10, 12})
        for (int k : {1, 2, 4, 8})
            cells.push_back({Group::SpecialOrthogonal, Mode::Coherent, n <= 6 ? Backend::Both : Backend::Gaussian, n, k,
                             "Z1", seed});
    return cells;
}

}  // namespace lcu
