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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lcu/errors.hpp"
#include "lcu/harness.hpp"
#include "test_util.hpp"

using namespace lcu;
using namespace lcu::testing;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("lcu_lab_test_" + name)).string();
}

CellSpec so_cell(int n, int k, Backend backend = Backend::Gaussian, Mode mode = Mode::Coherent) {
    return {Group::SpecialOrthogonal, mode, backend, n, k, "Z1", 2024};
}

}  // namespace

TEST_CASE("enum round trips", "[harness][config]") {
    for (auto g : {Group::SpecialOrthogonal, Group::Unitary}) CHECK(parse_group(to_string(g)) == g);
    for (auto m : {Mode::Coherent, Mode::Incoherent}) CHECK(parse_mode(to_string(m)) == m);
    for (auto b : {Backend::Gaussian, Backend::Dense, Backend::Both}) CHECK(parse_backend(to_string(b)) == b);
    CHECK_THROWS_AS(parse_group("orthogonal"), ConfigError);
}

TEST_CASE("config validation", "[harness][config]") {
    SweepConfig ok;
    CHECK_NOTHROW(ok.validate());

    SweepConfig c = ok;
    c.group = Group::Unitary;
    CHECK_THROWS_AS(c.validate(), ConfigError);  // gaussian backend
    c.backend = Backend::Dense;
    CHECK_NOTHROW(c.validate());
    c.qubit_list = {11};
    CHECK_THROWS_AS(c.validate(), ConfigError);  // dense limit

    c = ok;
    c.samples = 1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = ok;
    c.observable = "Z9";
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = ok;
    c.backend = Backend::Both;
    c.qubit_list = {12};
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("config file and entries", "[harness][config]") {
    const std::string path = temp_path("cfg.txt");
    {
        std::ofstream out(path);
        out << "# comment\n"
            << "group = special_orthogonal\n"
            << "qubits = 2, 6\n"
            << "ranks = 1,3\n"
            << "samples = 50   # trailing\n"
            << "seed = 18446744073709551615\n"
            << "\n"
            << "observable = X1X2\n";
    }
    SweepConfig cfg;
    for (const auto& [k, v] : read_config_file(path)) apply_config_entry(cfg, k, v);
    CHECK(cfg.qubit_list == std::vector<int>{2, 6});
    CHECK(cfg.rank_list == std::vector<int>{1, 3});
    CHECK(cfg.samples == 50);
    CHECK(cfg.master_seed == 18446744073709551615ull);
    CHECK(cfg.observable == "X1X2");
    CHECK_NOTHROW(cfg.validate());
    const auto entries = cfg.to_entries();
    CHECK(entries.at("qubits") == "2,6");
    CHECK(entries.at("observable") == "X1X2");

    CHECK_THROWS_AS(apply_config_entry(cfg, "colour", "red"), ConfigError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "qubits", "2,x"), ConfigError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "seed", "-3"), ConfigError);
    CHECK_THROWS_AS(read_config_file(temp_path("missing.txt")), ConfigError);
    {
        std::ofstream out(path);
        out << "just words\n";
    }
    CHECK_THROWS_AS(read_config_file(path), ConfigError);
    std::filesystem::remove(path);
}

TEST_CASE("run_trial properties", "[harness][trial]") {
    const CellContext ctx(so_cell(4, 3));
    for (std::uint64_t t = 0; t < 200; ++t) {
        const double m = run_trial(ctx, t).m;
        CHECK(m >= -1.0 - 1e-12);
        CHECK(m <= 1.0 + 1e-12);
    }
    // Replay is bitwise identical.
    CHECK(run_trial(ctx, 17).m == run_trial(ctx, 17).m);
    CHECK(run_trial(so_cell(4, 3), 17) == run_trial(ctx, 17).m);
    // Both backends agree.
    const CellContext both(so_cell(3, 4, Backend::Both));
    for (std::uint64_t t = 0; t < 20; ++t) CHECK(run_trial(both, t).backend_deviation < 1e-8);
}

TEST_CASE("k = 1 mean vanishes for Z1", "[harness][trial]") {
    for (Group g : {Group::SpecialOrthogonal, Group::Unitary}) {
        CellSpec cell{g, Mode::Coherent, g == Group::Unitary ? Backend::Dense : Backend::Gaussian, 2, 1, "Z1", 5};
        const CellContext ctx(cell);
        std::vector<double> v;
        for (std::uint64_t t = 0; t < 10000; ++t) v.push_back(run_trial(ctx, t).m);
        CHECK(mean_se(v).z(0.0) < 5.0);
    }
}

TEST_CASE("variance statistics", "[harness][stats]") {
    const auto st = variance_stats({1.0, 2.0, 3.0, 4.0});
    CHECK(st.mean == 2.5);
    CHECK(st.variance == Catch::Approx(5.0 / 3.0));
    CHECK(st.variance_se > 0.0);
    CHECK_THROWS_AS(variance_stats({1.0}), DomainError);

    SeededRng rng(50, 0);
    std::vector<double> v;
    for (int i = 0; i < 4000; ++i) v.push_back(rng.normal());
    const auto s = variance_stats(v);
    // For Gaussian data SE(var) ~ sqrt(2/S).
    CHECK(s.variance_se == Catch::Approx(std::sqrt(2.0 / 4000)).epsilon(0.1));
    CHECK(bootstrap_variance_se(v, 1000, 3) == Catch::Approx(s.variance_se).epsilon(0.15));
}

TEST_CASE("sweep examples", "[harness][sweep]") {
    SweepConfig cfg;
    cfg.qubit_list = {2, 4};
    cfg.rank_list = {1, 2};
    cfg.samples = 1000;
    cfg.master_seed = 7;
    const auto reports = run_sweep(cfg);
    REQUIRE(reports.size() == 4);
    for (const auto& r : reports) {
        INFO("N=" << r.n_qubits << " k=" << r.rank_k << " var=" << r.sample_variance << " se=" << r.variance_se
                  << " analytic=" << r.analytic_variance);
        CHECK(r.sample_variance >= 0.0);
        CHECK(r.variance_se > 0.0);
        CHECK(std::abs(r.sample_variance - r.analytic_variance) <= 3.0 * r.variance_se);
        CHECK(r.abs_rel_err == Catch::Approx(std::abs(r.sample_variance - r.analytic_variance) / r.analytic_variance));
        CHECK(r.sample_variance >= r.lower_bound - 5.0 * r.variance_se);
        CHECK(r.values.size() == 1000);
    }
    CHECK(reports[1].analytic_variance == Catch::Approx(1.0 / 6.0));  // N=2, k=2
    CHECK(reports[2].analytic_variance == Catch::Approx(1.0 / 7.0));  // N=4, k=1
}

TEST_CASE("incoherent sweep", "[harness][sweep]") {
    SweepConfig cfg;
    cfg.mode = Mode::Incoherent;
    cfg.qubit_list = {3};
    cfg.rank_list = {3};
    cfg.samples = 4000;
    const auto r = run_sweep(cfg).at(0);
    CHECK(r.analytic_variance == Catch::Approx(2.0 / 4.0 / 5.0));
    CHECK(std::abs(r.sample_variance - r.analytic_variance) <= 3.0 * r.variance_se);
}

TEST_CASE("worker count does not change results", "[harness][determinism]") {
    SweepConfig cfg;
    cfg.qubit_list = {2, 3};
    cfg.rank_list = {2, 3};
    cfg.samples = 100;
    cfg.workers = 1;
    const auto a = run_sweep(cfg);
    cfg.workers = 4;
    const auto b = run_sweep(cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].values == b[i].values);
}

TEST_CASE("CSV emission", "[harness][csv]") {
    SweepConfig cfg;
    cfg.qubit_list = {4, 2};
    cfg.rank_list = {2};
    cfg.samples = 20;
    const auto reports = run_sweep(cfg);
    const std::string path = temp_path("out.csv");
    emit_csv(reports, path, cfg.to_entries());
    const std::string text = slurp(path);
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "group,mode,backend,n_qubits,rank_k,samples,seed,sample_mean,sample_variance,variance_se,"
                  "analytic_variance,abs_rel_err");
    std::getline(lines, line);
    CHECK(line.rfind("special_orthogonal,coherent,gaussian,2,2,20,1,", 0) == 0);
    std::getline(lines, line);
    CHECK(line.rfind("special_orthogonal,coherent,gaussian,4,2,20,1,", 0) == 0);
    CHECK(!std::getline(lines, line));
    emit_csv(reports, path, cfg.to_entries());
    CHECK(slurp(path) == text);
    CHECK(std::filesystem::exists(path + ".meta"));

    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(0.5) == "0.5");

    std::vector<VarianceReport> single(reports.begin(), reports.begin() + 1);
    emit_csv(single, path);
    const std::string one = slurp(path);
    CHECK(std::count(one.begin(), one.end(), '\n') == 2);
    CHECK_THROWS_AS(emit_csv({}, path), DomainError);
    CHECK_THROWS_AS(emit_csv(reports, "/nonexistent-dir/x.csv"), IoError);
    std::filesystem::remove(path);
    std::filesystem::remove(path + ".meta");
}

TEST_CASE("tolerance verdict", "[harness][tolerance]") {
    auto make = [](double z) {
        VarianceReport r{};
        r.sample_variance = 1.0 + z * 0.1;
        r.analytic_variance = 1.0;
        r.variance_se = 0.1;
        return r;
    };
    std::vector<VarianceReport> reps(20, make(0.5));
    CHECK(check_tolerance(reps).passed);
    reps[0] = make(3.5);
    CHECK(check_tolerance(reps).passed);  // one 4-SE outlier allowed per 20 cells
    reps[1] = make(3.5);
    CHECK(!check_tolerance(reps).passed);
    reps[1] = make(0.0);
    reps[0] = make(4.5);
    CHECK(!check_tolerance(reps).passed);
    std::vector<VarianceReport> forty(40, make(0.1));
    forty[0] = make(3.2);
    forty[1] = make(-3.9);
    const auto v = check_tolerance(forty);
    CHECK(v.allowed_outliers == 2);
    CHECK(v.passed);
}

TEST_CASE("replication grid layout", "[harness][replication]") {
    const auto cells = replication_cells(3);
    CHECK(cells.size() == 24);
    for (const auto& c : cells) CHECK((c.backend == Backend::Both) == (c.qubits <= 6));
}

TEST_CASE("backend validation gate", "[harness][validate]") {
    const auto rep = validate_backends(3, 10, 9);
    CHECK(rep.checks.size() == 9);
    CHECK(rep.passed());
    const auto again = validate_backends(3, 10, 9);
    for (std::size_t i = 0; i < rep.checks.size(); ++i) {
        CHECK(rep.checks[i].max_m_deviation == again.checks[i].max_m_deviation);
        CHECK(rep.checks[i].worst_stream == again.checks[i].worst_stream);
    }
    CHECK_THROWS_AS(validate_backends(11, 1, 1), ConfigError);
}
