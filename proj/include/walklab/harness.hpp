#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "walklab/csv.hpp"
#include "walklab/opinion.hpp"
#include "walklab/qwalk.hpp"
#include "walklab/rng.hpp"

// Ensemble orchestration and observable logging shared by both engines:
// seeded-randomness contract (rng.hpp), per-step observable tables, sweep
// aggregation, and the CSV schemas the CLI writes.
namespace harness {

// ---- quantum walk ----------------------------------------------------

struct QwalkRunSpec {
    qwalk::WalkCase walk_case;
    int steps = 0;
    std::vector<int> record_distribution_at; // each in [0, steps]
};

struct ObservableRow {
    int t;
    double sigma;  // sqrt(<x^2>)
    double mean_x; // <x>
    double p0;     // probability at the origin
};

struct DistributionSnapshot {
    struct Row {
        int x;
        double p_coin0; // |A_x|^2
        double p_coin1; // |B_x|^2
        double p;       // their sum
    };
    int t;
    std::vector<Row> rows; // ascending x over the support window
};

struct QwalkRunResult {
    std::vector<ObservableRow> observables;       // t = 0..steps inclusive
    std::vector<DistributionSnapshot> snapshots;  // ascending t
};

// evolves the symmetric initial state under the case profile, logging
// sigma(t), <x(t)> and P0(t) at every step and the full distribution at the
// requested steps
QwalkRunResult run_qwalk_observables(const QwalkRunSpec& spec);

// ---- opinion sweeps --------------------------------------------------

struct SweepSpec {
    std::vector<double> alpha_grid;  // each in [0, 1]
    std::vector<double> mu_grid;     // each in [0, 1]
    std::vector<int> n_agents_list;  // each >= 2
    int ensemble_size = 1;
    std::uint64_t base_seed = 0;
    std::int64_t max_steps = 10'000'000;
    unsigned threads = 0; // 0 = one worker per logical processor

    void validate() const; // throws std::invalid_argument
};

struct SweepCell {
    double alpha = 0.0;
    double mu = 0.0;
    int n_agents = 0;
    // over consensus-reaching runs only; absent when no run reached consensus
    std::optional<double> mean_t;
    std::optional<double> std_t; // population (divide-by-n) standard deviation
    double consensus_rate = 0.0;       // consensus runs / ensemble_size
    double consensus_a_fraction = 0.0; // runs ending in consensus on A / ensemble_size
};

// Runs ensemble_size independent runs per (alpha, mu, N) cell. Cells come
// back in the grid's lexicographic order (alpha, then mu, then N); run
// number k of cell number c is seeded with
// derive_seed(base_seed, c * ensemble_size + k), so the output is identical
// however the work is scheduled.
std::vector<SweepCell> run_opinion_sweep(const SweepSpec& spec);

// ---- CSV schemas ------------------------------------------------------

CsvTable observables_table(const std::vector<ObservableRow>& rows);   // t,sigma,mean_x,p0
CsvTable snapshot_table(const DistributionSnapshot& snapshot); // t,x,prob_coin0,prob_coin1,prob
CsvTable trajectory_table(const std::vector<double>& ps_a);            // t,p_sA

struct CaseSigmaRow {
    std::string case_label;
    int t;
    double sigma;
};
CsvTable sigma_by_case_table(const std::vector<CaseSigmaRow>& rows);   // case,t,sigma

// alpha,mu,n_agents,mean_T,std_T,consensus_rate,consensus_A_fraction;
// absent mean_T / std_T render as empty fields
CsvTable sweep_table(const std::vector<SweepCell>& cells);

} // namespace harness
