#include "walklab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace harness {

QwalkRunResult run_qwalk_observables(const QwalkRunSpec& spec) {
    if (spec.steps < 0)
        throw std::invalid_argument("step count must be >= 0");
    std::vector<int> snapshot_at = spec.record_distribution_at;
    std::sort(snapshot_at.begin(), snapshot_at.end());
    snapshot_at.erase(std::unique(snapshot_at.begin(), snapshot_at.end()), snapshot_at.end());
    if (!snapshot_at.empty() && (snapshot_at.front() < 0 || snapshot_at.back() > spec.steps))
        throw std::invalid_argument("snapshot steps must lie within [0, steps]");

    const qwalk::PotentialProfile profile = qwalk::build_case(spec.walk_case);
    qwalk::WalkerState state = qwalk::symmetric_initial_state();
    state.reserve_steps(spec.steps);

    QwalkRunResult result;
    result.observables.reserve(spec.steps + 1);
    auto log_step = [&](const qwalk::WalkerState& s) {
        const qwalk::Distribution dist = qwalk::position_distribution(s);
        result.observables.push_back({s.step_t(), qwalk::std_dev(dist),
                                      qwalk::mean_position(dist),
                                      qwalk::origin_probability(s)});
        if (std::binary_search(snapshot_at.begin(), snapshot_at.end(), s.step_t())) {
            DistributionSnapshot snap;
            snap.t = s.step_t();
            snap.rows.reserve(dist.size());
            for (int x = s.window_min(); x <= s.window_max(); ++x)
                snap.rows.push_back({x, std::norm(s.amp0(x)), std::norm(s.amp1(x)),
                                     std::norm(s.amp0(x)) + std::norm(s.amp1(x))});
            result.snapshots.push_back(std::move(snap));
        }
    };

    log_step(state);
    for (int t = 1; t <= spec.steps; ++t) {
        state = qwalk::step(state, profile);
        log_step(state);
    }
    return result;
}

void SweepSpec::validate() const {
    if (alpha_grid.empty() || mu_grid.empty() || n_agents_list.empty())
        throw std::invalid_argument("sweep grids must be non-empty");
    for (double a : alpha_grid)
        if (!(a >= 0.0 && a <= 1.0))
            throw std::invalid_argument("alpha grid values must lie in [0, 1]");
    for (double m : mu_grid)
        if (!(m >= 0.0 && m <= 1.0))
            throw std::invalid_argument("mu grid values must lie in [0, 1]");
    for (int n : n_agents_list)
        if (n < 2)
            throw std::invalid_argument("agent counts must be >= 2");
    if (ensemble_size < 1)
        throw std::invalid_argument("ensemble size must be >= 1");
    if (max_steps < 1)
        throw std::invalid_argument("max_steps must be positive");
}

namespace {

struct RunResultLite {
    opinion::RunOutcome::Termination termination;
    std::int64_t steps;
};

} // namespace

std::vector<SweepCell> run_opinion_sweep(const SweepSpec& spec) {
    spec.validate();

    struct CellParams {
        double alpha, mu;
        int n;
    };
    std::vector<CellParams> cells;
    for (double a : spec.alpha_grid)
        for (double m : spec.mu_grid)
            for (int n : spec.n_agents_list)
                cells.push_back({a, m, n});

    const std::size_t total = cells.size() * static_cast<std::size_t>(spec.ensemble_size);
    std::vector<RunResultLite> results(total);

    auto execute = [&](std::size_t task) {
        const CellParams& cell = cells[task / spec.ensemble_size];
        opinion::ModelParams params;
        params.alpha = cell.alpha;
        params.mu = cell.mu;
        params.n_agents = cell.n;
        params.max_steps = spec.max_steps;
        params.seed = derive_seed(spec.base_seed, task);
        const opinion::RunOutcome outcome = opinion::run(params);
        results[task] = {outcome.termination, outcome.steps_used};
    };

    unsigned workers = spec.threads != 0 ? spec.threads : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, total));
    if (workers == 1) {
        for (std::size_t task = 0; task < total; ++task)
            execute(task);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t task = next.fetch_add(1); task < total;
                     task = next.fetch_add(1))
                    execute(task);
            });
        for (std::thread& t : pool)
            t.join();
    }

    // aggregation happens after the join, in task order, so the outcome is
    // independent of the worker count
    std::vector<SweepCell> out;
    out.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        SweepCell cell;
        cell.alpha = cells[c].alpha;
        cell.mu = cells[c].mu;
        cell.n_agents = cells[c].n;
        std::int64_t consensus = 0, consensus_a = 0;
        double sum = 0.0;
        for (int k = 0; k < spec.ensemble_size; ++k) {
            const RunResultLite& r = results[c * spec.ensemble_size + k];
            if (r.termination == opinion::RunOutcome::Termination::StepCapReached)
                continue;
            ++consensus;
            if (r.termination == opinion::RunOutcome::Termination::ConsensusA)
                ++consensus_a;
            sum += static_cast<double>(r.steps);
        }
        cell.consensus_rate = static_cast<double>(consensus) / spec.ensemble_size;
        cell.consensus_a_fraction = static_cast<double>(consensus_a) / spec.ensemble_size;
        if (consensus > 0) {
            const double mean = sum / static_cast<double>(consensus);
            double sq = 0.0;
            for (int k = 0; k < spec.ensemble_size; ++k) {
                const RunResultLite& r = results[c * spec.ensemble_size + k];
                if (r.termination == opinion::RunOutcome::Termination::StepCapReached)
                    continue;
                const double d = static_cast<double>(r.steps) - mean;
                sq += d * d;
            }
            cell.mean_t = mean;
            cell.std_t = std::sqrt(sq / static_cast<double>(consensus));
        }
        out.push_back(cell);
    }
    return out;
}

CsvTable observables_table(const std::vector<ObservableRow>& rows) {
    CsvTable table;
    table.header = {"t", "sigma", "mean_x", "p0"};
    table.rows.reserve(rows.size());
    for (const ObservableRow& r : rows)
        table.rows.push_back(
            {csv_int(r.t), csv_real(r.sigma), csv_real(r.mean_x), csv_real(r.p0)});
    return table;
}

CsvTable snapshot_table(const DistributionSnapshot& snapshot) {
    CsvTable table;
    table.header = {"t", "x", "prob_coin0", "prob_coin1", "prob"};
    table.rows.reserve(snapshot.rows.size());
    for (const auto& r : snapshot.rows)
        table.rows.push_back({csv_int(snapshot.t), csv_int(r.x), csv_real(r.p_coin0),
                              csv_real(r.p_coin1), csv_real(r.p)});
    return table;
}

CsvTable trajectory_table(const std::vector<double>& ps_a) {
    CsvTable table;
    table.header = {"t", "p_sA"};
    table.rows.reserve(ps_a.size());
    for (std::size_t t = 0; t < ps_a.size(); ++t)
        table.rows.push_back({csv_int(static_cast<std::int64_t>(t)), csv_real(ps_a[t])});
    return table;
}

CsvTable sigma_by_case_table(const std::vector<CaseSigmaRow>& rows) {
    CsvTable table;
    table.header = {"case", "t", "sigma"};
    table.rows.reserve(rows.size());
    for (const CaseSigmaRow& r : rows)
        table.rows.push_back({r.case_label, csv_int(r.t), csv_real(r.sigma)});
    return table;
}

CsvTable sweep_table(const std::vector<SweepCell>& cells) {
    CsvTable table;
    table.header = {"alpha", "mu",    "n_agents",       "mean_T",
                    "std_T", "consensus_rate", "consensus_A_fraction"};
    table.rows.reserve(cells.size());
    for (const SweepCell& c : cells)
        table.rows.push_back({csv_real(c.alpha), csv_real(c.mu), csv_int(c.n_agents),
                              c.mean_t ? csv_real(*c.mean_t) : std::string{},
                              c.std_t ? csv_real(*c.std_t) : std::string{},
                              csv_real(c.consensus_rate), csv_real(c.consensus_a_fraction)});
    return table;
}

} // namespace harness
