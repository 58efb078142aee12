#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>

#include "doctest.h"

#include "walklab/csv.hpp"
#include "walklab/harness.hpp"
#include "walklab/opinion.hpp"
#include "walklab/rng.hpp"

namespace fs = std::filesystem;
using qwalk::CaseLabel;

namespace {

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "walklab_harness_test";
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("derive_seed matches the published SplitMix64 sequence") {
    CHECK(harness::derive_seed(0, 0) == 0xE220A8397B1DCDAFULL);
    CHECK(harness::derive_seed(0, 1) == 0x6E789E6AA1B965F4ULL);
    CHECK(harness::derive_seed(42, 0) == 0xBDD732262FEB6E95ULL);
    CHECK(harness::derive_seed(42, 7) == 0xCCF635EE9E9E2FA4ULL);
    CHECK(harness::derive_seed(0xDEADBEEFULL, 1000) == 0xC75525697C697289ULL);
}

TEST_CASE("derive_seed is deterministic and collision-free over a sweep's worth of indices") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 50000; ++i) {
        const std::uint64_t s = harness::derive_seed(12345, i);
        CHECK(s == harness::derive_seed(12345, i));
        seen.insert(s);
    }
    CHECK(seen.size() == 50000);
}

TEST_CASE("uniform01 stays in [0, 1) and uniform_index in range") {
    harness::RngStream rng(99);
    for (int k = 0; k < 100000; ++k) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    for (int k = 0; k < 1000; ++k) {
        const int i = rng.uniform_index(7);
        CHECK(i >= 0);
        CHECK(i < 7);
    }
}

TEST_CASE("qwalk observables for the two-step Hadamard walk") {
    harness::QwalkRunSpec spec;
    spec.walk_case = {CaseLabel::Hadamard, 1};
    spec.steps = 2;
    spec.record_distribution_at = {2};
    const harness::QwalkRunResult result = harness::run_qwalk_observables(spec);

    REQUIRE(result.observables.size() == 3);
    CHECK(result.observables[0].t == 0);
    CHECK(result.observables[0].sigma == 0.0);
    CHECK(result.observables[0].p0 == doctest::Approx(1.0).epsilon(1e-15));

    CHECK(result.observables[1].t == 1);
    CHECK(result.observables[1].sigma == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(result.observables[1].mean_x) <= 1e-15);
    CHECK(result.observables[1].p0 == 0.0);

    CHECK(result.observables[2].t == 2);
    CHECK(result.observables[2].sigma == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(result.observables[2].mean_x) <= 1e-15);
    CHECK(result.observables[2].p0 == doctest::Approx(0.5).epsilon(1e-12));

    REQUIRE(result.snapshots.size() == 1);
    const harness::DistributionSnapshot& snap = result.snapshots[0];
    CHECK(snap.t == 2);
    REQUIRE(snap.rows.size() == 5); // window [-2, 2]
    CHECK(snap.rows[0].x == -2);
    CHECK(snap.rows[0].p_coin0 == 0.0);
    CHECK(snap.rows[0].p_coin1 == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(snap.rows[2].x == 0);
    CHECK(snap.rows[2].p_coin0 == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(snap.rows[2].p_coin1 == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(snap.rows[4].x == 2);
    CHECK(snap.rows[4].p_coin0 == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(snap.rows[4].p_coin1 == 0.0);
}

TEST_CASE("qwalk observables: p0 is exactly zero on every odd step") {
    harness::QwalkRunSpec spec;
    spec.walk_case = {CaseLabel::IA, 14};
    spec.steps = 51;
    const harness::QwalkRunResult result = harness::run_qwalk_observables(spec);
    REQUIRE(result.observables.size() == 52);
    for (const harness::ObservableRow& row : result.observables)
        if (row.t % 2 == 1)
            CHECK(row.p0 == 0.0);
}

TEST_CASE("qwalk observables rejects snapshots outside the run") {
    harness::QwalkRunSpec spec;
    spec.walk_case = {CaseLabel::Hadamard, 1};
    spec.steps = 5;
    spec.record_distribution_at = {6};
    CHECK_THROWS_AS(harness::run_qwalk_observables(spec), std::invalid_argument);
    spec.record_distribution_at = {-1};
    CHECK_THROWS_AS(harness::run_qwalk_observables(spec), std::invalid_argument);
}

TEST_CASE("sweep with ensemble size one reproduces the single run") {
    harness::SweepSpec spec;
    spec.alpha_grid = {0.5};
    spec.mu_grid = {1.0};
    spec.n_agents_list = {25};
    spec.ensemble_size = 1;
    spec.base_seed = 99;
    spec.max_steps = 1000000;
    spec.threads = 1;
    const auto cells = harness::run_opinion_sweep(spec);
    REQUIRE(cells.size() == 1);

    opinion::ModelParams params;
    params.alpha = 0.5;
    params.mu = 1.0;
    params.n_agents = 25;
    params.max_steps = spec.max_steps;
    params.seed = harness::derive_seed(99, 0);
    const opinion::RunOutcome out = opinion::run(params);

    REQUIRE(cells[0].mean_t.has_value());
    CHECK(*cells[0].mean_t == static_cast<double>(out.steps_used));
    CHECK(*cells[0].std_t == 0.0);
    CHECK(cells[0].consensus_rate == 1.0);
}

TEST_CASE("sweep cells are identical however many workers run them") {
    harness::SweepSpec spec;
    spec.alpha_grid = {0.0, 0.5, 1.0};
    spec.mu_grid = {0.5, 1.0};
    spec.n_agents_list = {5, 9};
    spec.ensemble_size = 6;
    spec.base_seed = 31337;
    spec.max_steps = 200000;

    spec.threads = 1;
    const auto serial = harness::run_opinion_sweep(spec);
    spec.threads = 4;
    const auto threaded = harness::run_opinion_sweep(spec);

    REQUIRE(serial.size() == threaded.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].alpha == threaded[i].alpha);
        CHECK(serial[i].mu == threaded[i].mu);
        CHECK(serial[i].n_agents == threaded[i].n_agents);
        CHECK(serial[i].mean_t == threaded[i].mean_t);
        CHECK(serial[i].std_t == threaded[i].std_t);
        CHECK(serial[i].consensus_rate == threaded[i].consensus_rate);
        CHECK(serial[i].consensus_a_fraction == threaded[i].consensus_a_fraction);
    }
    const std::string a = [&] {
        const fs::path p = scratch_dir() / "sweep_serial.csv";
        harness::write_csv(harness::sweep_table(serial), p);
        return p.string();
    }();
    const std::string b = [&] {
        const fs::path p = scratch_dir() / "sweep_threaded.csv";
        harness::write_csv(harness::sweep_table(threaded), p);
        return p.string();
    }();
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    const std::string ca((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
    const std::string cb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
    CHECK(ca == cb);
}

TEST_CASE("sweep aggregation matches a direct recomputation") {
    harness::SweepSpec spec;
    spec.alpha_grid = {0.25, 0.75};
    spec.mu_grid = {0.5};
    spec.n_agents_list = {7};
    spec.ensemble_size = 5;
    spec.base_seed = 4711;
    spec.max_steps = 300000;
    spec.threads = 2;
    const auto cells = harness::run_opinion_sweep(spec);
    REQUIRE(cells.size() == 2);

    for (std::size_t c = 0; c < cells.size(); ++c) {
        std::vector<std::int64_t> consensus_steps;
        int consensus_a = 0;
        for (int k = 0; k < spec.ensemble_size; ++k) {
            opinion::ModelParams params;
            params.alpha = cells[c].alpha;
            params.mu = cells[c].mu;
            params.n_agents = cells[c].n_agents;
            params.max_steps = spec.max_steps;
            params.seed = harness::derive_seed(
                spec.base_seed, c * static_cast<std::size_t>(spec.ensemble_size) + k);
            const opinion::RunOutcome out = opinion::run(params);
            if (out.termination != opinion::RunOutcome::Termination::StepCapReached) {
                consensus_steps.push_back(out.steps_used);
                if (out.termination == opinion::RunOutcome::Termination::ConsensusA)
                    ++consensus_a;
            }
        }
        CHECK(cells[c].consensus_rate ==
              static_cast<double>(consensus_steps.size()) / spec.ensemble_size);
        CHECK(cells[c].consensus_a_fraction ==
              static_cast<double>(consensus_a) / spec.ensemble_size);
        REQUIRE(cells[c].mean_t.has_value());
        double sum = 0.0;
        for (std::int64_t t : consensus_steps)
            sum += static_cast<double>(t);
        const double mean = sum / static_cast<double>(consensus_steps.size());
        double sq = 0.0;
        for (std::int64_t t : consensus_steps)
            sq += (static_cast<double>(t) - mean) * (static_cast<double>(t) - mean);
        CHECK(*cells[c].mean_t == mean);
        CHECK(*cells[c].std_t == std::sqrt(sq / static_cast<double>(consensus_steps.size())));
    }
}

TEST_CASE("sweep spec validation") {
    harness::SweepSpec spec;
    spec.alpha_grid = {};
    spec.mu_grid = {0.5};
    spec.n_agents_list = {5};
    CHECK_THROWS_AS(harness::run_opinion_sweep(spec), std::invalid_argument);
    spec.alpha_grid = {1.5};
    CHECK_THROWS_AS(harness::run_opinion_sweep(spec), std::invalid_argument);
    spec.alpha_grid = {0.5};
    spec.ensemble_size = 0;
    CHECK_THROWS_AS(harness::run_opinion_sweep(spec), std::invalid_argument);
}

TEST_CASE("csv_real renders 17 significant digits that round-trip") {
    CHECK(harness::csv_real(1.0) == "1");
    CHECK(harness::csv_real(0.5) == "0.5");
    harness::RngStream rng(11);
    for (int k = 0; k < 5000; ++k) {
        const double mag = std::pow(10.0, std::floor(rng.uniform01() * 40.0) - 20.0);
        const double v = (rng.uniform01() - 0.5) * mag;
        const std::string text = harness::csv_real(v);
        CHECK(std::stod(text) == v);
    }
}

TEST_CASE("write_csv emits header-only files for empty tables and round-trips") {
    const fs::path path = scratch_dir() / "empty.csv";
    harness::CsvTable table;
    table.header = {"t", "sigma", "mean_x", "p0"};
    harness::write_csv(table, path);

    std::ifstream in(path, std::ios::binary);
    const std::string contents((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    CHECK(contents == "t,sigma,mean_x,p0\n");

    const harness::CsvTable back = harness::read_csv(path);
    CHECK(back.header == table.header);
    CHECK(back.rows.empty());
}

TEST_CASE("csv round-trip preserves every cell") {
    const fs::path path = scratch_dir() / "roundtrip.csv";
    harness::CsvTable table;
    table.header = {"a", "b", "c"};
    table.rows = {{harness::csv_real(1.0 / 3.0), "", harness::csv_int(-7)},
                  {"x", harness::csv_real(-0.0), harness::csv_real(1e-300)}};
    harness::write_csv(table, path);
    const harness::CsvTable back = harness::read_csv(path);
    CHECK(back.header == table.header);
    REQUIRE(back.rows.size() == table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r)
        CHECK(back.rows[r] == table.rows[r]);
}

TEST_CASE("write_csv raises on unwritable paths") {
    harness::CsvTable table;
    table.header = {"x"};
    CHECK_THROWS_AS(harness::write_csv(table, "/nonexistent-dir/nope.csv"), std::runtime_error);
}

TEST_CASE("sigma table for the two-step walk has three data rows") {
    harness::QwalkRunSpec spec;
    spec.walk_case = {CaseLabel::Hadamard, 1};
    spec.steps = 2;
    const auto result = harness::run_qwalk_observables(spec);
    const harness::CsvTable table = harness::observables_table(result.observables);
    CHECK(table.header == std::vector<std::string>{"t", "sigma", "mean_x", "p0"});
    CHECK(table.rows.size() == 3);
}

TEST_CASE("table schemas match the declared headers") {
    CHECK(harness::trajectory_table({0.5, 1.0}).header ==
          std::vector<std::string>{"t", "p_sA"});
    CHECK(harness::sigma_by_case_table({}).header ==
          std::vector<std::string>{"case", "t", "sigma"});
    harness::DistributionSnapshot snap;
    snap.t = 3;
    CHECK(harness::snapshot_table(snap).header ==
          std::vector<std::string>{"t", "x", "prob_coin0", "prob_coin1", "prob"});
    CHECK(harness::sweep_table({}).header ==
          std::vector<std::string>{"alpha", "mu", "n_agents", "mean_T", "std_T",
                                   "consensus_rate", "consensus_A_fraction"});
}

TEST_CASE("absent mean_T renders as an empty field") {
    harness::SweepCell cell;
    cell.alpha = 0.5;
    cell.mu = 0.0;
    cell.n_agents = 4;
    cell.consensus_rate = 0.0;
    cell.consensus_a_fraction = 0.0;
    const harness::CsvTable table = harness::sweep_table({cell});
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0][3] == "");
    CHECK(table.rows[0][4] == "");
    const fs::path path = scratch_dir() / "absent.csv";
    harness::write_csv(table, path);
    const harness::CsvTable back = harness::read_csv(path);
    REQUIRE(back.rows.size() == 1);
    CHECK(back.rows[0] == table.rows[0]);
}

TEST_CASE("trajectory table rows are (t, p_sA) pairs") {
    const harness::CsvTable table = harness::trajectory_table({0.25, 0.5, 1.0});
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[0] == std::vector<std::string>{"0", "0.25"});
    CHECK(table.rows[2] == std::vector<std::string>{"2", "1"});
}
