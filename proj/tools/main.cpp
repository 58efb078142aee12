#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "walklab/harness.hpp"
#include "walklab/opinion.hpp"
#include "walklab/qwalk.hpp"

namespace {

namespace fs = std::filesystem;

// "start:stop:step" (stop included within half a step) or "v1,v2,..."
std::vector<double> parse_grid(const std::string& text) {
    const auto fail = [&text] {
        throw std::invalid_argument("cannot parse grid '" + text +
                                    "' (expected start:stop:step or v1,v2,...)");
    };
    auto to_double = [&](const std::string& token) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            fail();
        }
        if (used != token.size())
            fail();
        return v;
    };

    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream in(text);
        std::string token;
        while (std::getline(in, token, ':'))
            parts.push_back(token);
        if (parts.size() != 3)
            fail();
        const double start = to_double(parts[0]);
        const double stop = to_double(parts[1]);
        const double step = to_double(parts[2]);
        if (step <= 0.0 || stop < start)
            fail();
        for (int k = 0;; ++k) {
            const double v = start + k * step;
            if (v > stop + step / 2)
                break;
            values.push_back(v);
        }
    } else {
        std::stringstream in(text);
        std::string token;
        while (std::getline(in, token, ','))
            values.push_back(to_double(token));
    }
    if (values.empty())
        fail();
    return values;
}

fs::path prepare_out_dir(const std::string& dir) {
    fs::path out(dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
    return out;
}

// the case catalog takes N for IA/IB/IIA/IIB/HADAMARD and q for IIIA/IIIB
qwalk::WalkCase resolve_case(const std::string& name, std::optional<int> n_opt,
                             std::optional<int> q_opt) {
    const qwalk::CaseLabel label = qwalk::case_label_from_string(name);
    const bool wants_q = label == qwalk::CaseLabel::IIIA || label == qwalk::CaseLabel::IIIB;
    if (wants_q) {
        if (!q_opt)
            throw std::invalid_argument("case " + name + " requires --q");
        if (n_opt)
            throw std::invalid_argument("case " + name + " takes --q, not --N");
        return {label, *q_opt};
    }
    if (!n_opt)
        throw std::invalid_argument("case " + name + " requires --N");
    if (q_opt)
        throw std::invalid_argument("case " + name + " takes --N, not --q");
    return {label, *n_opt};
}

struct QwalkRunArgs {
    std::string case_name;
    std::optional<int> n, q;
    int steps = 0;
    std::vector<int> snapshot_at;
    std::string out_dir;
};

int cmd_qwalk_run(const QwalkRunArgs& args) {
    harness::QwalkRunSpec spec;
    spec.walk_case = resolve_case(args.case_name, args.n, args.q);
    spec.steps = args.steps;
    spec.record_distribution_at = args.snapshot_at;
    const harness::QwalkRunResult result = harness::run_qwalk_observables(spec);

    const fs::path out = prepare_out_dir(args.out_dir);
    harness::write_csv(harness::observables_table(result.observables), out / "observables.csv");
    for (const auto& snap : result.snapshots)
        harness::write_csv(harness::snapshot_table(snap),
                           out / ("dist_t" + std::to_string(snap.t) + ".csv"));
    return 0;
}

struct QwalkCasesArgs {
    int n = 0, q = 0, steps = 0;
    std::string out_dir;
};

int cmd_qwalk_cases(const QwalkCasesArgs& args) {
    using qwalk::CaseLabel;
    const std::vector<qwalk::WalkCase> catalog = {
        {CaseLabel::IA, args.n},   {CaseLabel::IB, args.n},   {CaseLabel::IIA, args.n},
        {CaseLabel::IIB, args.n},  {CaseLabel::IIIA, args.q}, {CaseLabel::IIIB, args.q},
        {CaseLabel::Hadamard, args.n}};

    // fail fast on every case before running any of them
    for (const qwalk::WalkCase& walk_case : catalog)
        qwalk::build_case(walk_case);

    std::vector<harness::CaseSigmaRow> rows;
    rows.reserve(catalog.size() * (args.steps + 1));
    for (const qwalk::WalkCase& walk_case : catalog) {
        harness::QwalkRunSpec spec;
        spec.walk_case = walk_case;
        spec.steps = args.steps;
        const harness::QwalkRunResult result = harness::run_qwalk_observables(spec);
        for (const harness::ObservableRow& r : result.observables)
            rows.push_back({qwalk::to_string(walk_case.label), r.t, r.sigma});
    }
    const fs::path out = prepare_out_dir(args.out_dir);
    harness::write_csv(harness::sigma_by_case_table(rows), out / "sigma_by_case.csv");
    return 0;
}

struct OpinionRunArgs {
    double alpha = 0.5, mu = 1.0;
    int agents = 25;
    std::uint64_t seed = 0;
    std::int64_t max_steps = 10'000'000;
    std::string out_dir;
};

int cmd_opinion_run(const OpinionRunArgs& args) {
    opinion::ModelParams params;
    params.alpha = args.alpha;
    params.mu = args.mu;
    params.n_agents = args.agents;
    params.seed = args.seed;
    params.max_steps = args.max_steps;
    params.validate();

    const opinion::RunOutcome outcome = opinion::run(params, opinion::TrajectoryLog::On);
    const fs::path out = prepare_out_dir(args.out_dir);
    harness::write_csv(harness::trajectory_table(outcome.ps_a_trajectory), out / "trajectory.csv");

    switch (outcome.termination) {
    case opinion::RunOutcome::Termination::ConsensusA:
        std::cout << "consensus A after " << outcome.steps_used << " steps\n";
        break;
    case opinion::RunOutcome::Termination::ConsensusB:
        std::cout << "consensus B after " << outcome.steps_used << " steps\n";
        break;
    case opinion::RunOutcome::Termination::StepCapReached:
        std::cout << "no consensus within " << outcome.steps_used << " steps\n";
        break;
    }
    return 0;
}

struct OpinionSweepArgs {
    std::string alpha_grid = "0:1:0.1";
    std::string mu_grid = "0:1:0.1";
    std::vector<int> agents = {25};
    int ensemble = 200;
    std::uint64_t seed = 0;
    std::int64_t max_steps = 10'000'000;
    unsigned threads = 0;
    std::string out_dir;
};

int cmd_opinion_sweep(const OpinionSweepArgs& args) {
    harness::SweepSpec spec;
    spec.alpha_grid = parse_grid(args.alpha_grid);
    spec.mu_grid = parse_grid(args.mu_grid);
    spec.n_agents_list = args.agents;
    spec.ensemble_size = args.ensemble;
    spec.base_seed = args.seed;
    spec.max_steps = args.max_steps;
    spec.threads = args.threads;
    spec.validate();

    const std::vector<harness::SweepCell> cells = harness::run_opinion_sweep(spec);
    const fs::path out = prepare_out_dir(args.out_dir);
    harness::write_csv(harness::sweep_table(cells), out / "sweep.csv");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"walklab: quantum walk in a periodic potential + interacting-opinion dynamics"};
    app.require_subcommand(1);

    QwalkRunArgs qr;
    int qr_n = 0, qr_q = 0;
    CLI::App* qwalk_run = app.add_subcommand(
        "qwalk-run", "evolve one walk case and write observables.csv (+ dist_t<k>.csv snapshots)");
    qwalk_run->add_option("--case", qr.case_name, "IA, IB, IIA, IIB, IIIA, IIIB or HADAMARD")
        ->required();
    CLI::Option* qr_n_opt =
        qwalk_run->add_option("--N", qr_n, "period N (cases IA/IB/IIA/IIB/HADAMARD)");
    CLI::Option* qr_q_opt =
        qwalk_run->add_option("--q", qr_q, "block length q (cases IIIA/IIIB; period is 2q)");
    qwalk_run->add_option("--steps", qr.steps, "number of walk steps")
        ->required()
        ->check(CLI::NonNegativeNumber);
    qwalk_run->add_option("--snapshot-at", qr.snapshot_at,
                          "steps at which to dump the full distribution")
        ->delimiter(',');
    qwalk_run->add_option("--out", qr.out_dir, "output directory")->required();

    QwalkCasesArgs qc;
    CLI::App* qwalk_cases = app.add_subcommand(
        "qwalk-cases", "run all six catalog cases plus the Hadamard baseline side by side");
    qwalk_cases->add_option("--N", qc.n, "period N for cases IA/IB/IIA/IIB/HADAMARD (even)")
        ->required();
    qwalk_cases->add_option("--q", qc.q, "block length q for cases IIIA/IIIB (odd)")->required();
    qwalk_cases->add_option("--steps", qc.steps, "number of walk steps")
        ->required()
        ->check(CLI::NonNegativeNumber);
    qwalk_cases->add_option("--out", qc.out_dir, "output directory")->required();

    OpinionRunArgs orun;
    CLI::App* opinion_run =
        app.add_subcommand("opinion-run", "one opinion run; writes trajectory.csv");
    opinion_run->add_option("--alpha", orun.alpha, "social-pressure weight in [0, 1]")->required();
    opinion_run->add_option("--mu", orun.mu, "peer-influence strength in [0, 1]")->required();
    opinion_run->add_option("--agents", orun.agents, "ring size (>= 2)")->required();
    opinion_run->add_option("--seed", orun.seed, "random seed");
    opinion_run->add_option("--max-steps", orun.max_steps, "step cap");
    opinion_run->add_option("--out", orun.out_dir, "output directory")->required();

    OpinionSweepArgs osweep;
    CLI::App* opinion_sweep =
        app.add_subcommand("opinion-sweep", "ensemble sweep over (alpha, mu, N); writes sweep.csv");
    opinion_sweep->add_option("--alpha-grid", osweep.alpha_grid,
                              "alpha grid, start:stop:step or comma list");
    opinion_sweep->add_option("--mu-grid", osweep.mu_grid,
                              "mu grid, start:stop:step or comma list");
    opinion_sweep->add_option("--agents", osweep.agents, "agent counts, comma list")
        ->delimiter(',');
    opinion_sweep->add_option("--ensemble", osweep.ensemble, "runs per grid cell");
    opinion_sweep->add_option("--seed", osweep.seed, "base seed for the ensemble streams");
    opinion_sweep->add_option("--max-steps", osweep.max_steps, "step cap per run");
    opinion_sweep->add_option("--threads", osweep.threads,
                              "worker threads (0 = logical processors; results do not depend on it)");
    opinion_sweep->add_option("--out", osweep.out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
        if (qwalk_run->parsed()) {
            if (qr_n_opt->count() > 0)
                qr.n = qr_n;
            if (qr_q_opt->count() > 0)
                qr.q = qr_q;
            return cmd_qwalk_run(qr);
        }
        if (qwalk_cases->parsed())
            return cmd_qwalk_cases(qc);
        if (opinion_run->parsed())
            return cmd_opinion_run(orun);
        if (opinion_sweep->parsed())
            return cmd_opinion_sweep(osweep);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
