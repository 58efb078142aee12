#include "walklab/opinion.hpp"

#include <algorithm>
#include <stdexcept>

namespace opinion {

double preference_ratio(const OpinionState& agent) {
    const double sum = agent.c_a + agent.c_b;
    if (sum <= 0.0)
        throw std::domain_error("degenerate opinion state: c_A + c_B must be positive");
    return agent.c_a / sum;
}

Choice revealed_choice(const OpinionState& agent) {
    return preference_ratio(agent) > 0.5 ? Choice::A : Choice::B;
}

bool counts_toward_a(const OpinionState& agent) {
    return counts_toward_a_ratio(preference_ratio(agent));
}

double decision_factor(const OpinionState& listener, const OpinionState& lobbyist, double p_sa,
                       double alpha) {
    return decision_factor_from_ratios(preference_ratio(listener), preference_ratio(lobbyist),
                                       p_sa, alpha);
}

OpinionState apply_persuasion(OpinionState listener, double lobbyist_ratio, double mu) {
    const double delta = mu * (lobbyist_ratio - preference_ratio(listener));
    listener.c_a = std::clamp(listener.c_a + delta, 0.0, 1.0);
    listener.c_b = std::clamp(listener.c_b - delta, 0.0, 1.0);
    return listener;
}

void ModelParams::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha must lie in [0, 1]");
    if (!(mu >= 0.0 && mu <= 1.0))
        throw std::invalid_argument("mu must lie in [0, 1]");
    if (n_agents < 2)
        throw std::invalid_argument("the ring needs at least 2 agents");
    if (max_steps < 1)
        throw std::invalid_argument("max_steps must be positive");
}

double social_preference(const OpinionPopulation& pop) {
    if (pop.agents.empty())
        throw std::invalid_argument("population is empty");
    double count = 0.0;
    for (const OpinionState& agent : pop.agents)
        count += std::floor(preference_ratio(agent) + 0.5);
    return count / static_cast<double>(pop.agents.size());
}

OpinionPopulation random_population(const ModelParams& params, harness::RngStream& rng) {
    params.validate();
    auto open_unit = [&rng] {
        double v = rng.uniform01();
        while (v == 0.0 || v == 1.0)
            v = rng.uniform01();
        return v;
    };
    OpinionPopulation pop;
    pop.agents.resize(params.n_agents);
    for (OpinionState& agent : pop.agents) {
        agent.c_a = open_unit();
        agent.c_b = open_unit();
    }
    pop.lobbyist = rng.uniform_index(params.n_agents);
    pop.direction = rng.uniform_sign();
    pop.step_t = 0;
    return pop;
}

RunOutcome run(const ModelParams& params, TrajectoryLog log) {
    params.validate();
    harness::RngStream rng(params.seed);
    OpinionPopulation pop = random_population(params, rng);
    const int n = pop.size();

    // cached ratios plus a running count of agents rounding to A keep each
    // step O(1); count / n is bit-identical to social_preference()
    std::vector<double> ratio(n);
    int above = 0;
    for (int i = 0; i < n; ++i) {
        ratio[i] = preference_ratio(pop.agents[i]);
        above += counts_toward_a_ratio(ratio[i]) ? 1 : 0;
    }

    RunOutcome out;
    out.seed = params.seed;
    const bool record = log == TrajectoryLog::On;
    if (record)
        out.ps_a_trajectory.push_back(static_cast<double>(above) / n);

    for (;;) {
        if (above == n) {
            out.termination = RunOutcome::Termination::ConsensusA;
            break;
        }
        if (above == 0) {
            out.termination = RunOutcome::Termination::ConsensusB;
            break;
        }
        if (pop.step_t >= params.max_steps) {
            out.termination = RunOutcome::Termination::StepCapReached;
            break;
        }

        const int i = pop.listener();
        const int j = pop.lobbyist;
        const double p_sa = static_cast<double>(above) / n;
        const double factor = decision_factor_from_ratios(ratio[i], ratio[j], p_sa, params.alpha);
        if (factor > rng.uniform01()) {
            pop.agents[i] = apply_persuasion(pop.agents[i], ratio[j], params.mu);
            const double updated = preference_ratio(pop.agents[i]);
            above += (counts_toward_a_ratio(updated) ? 1 : 0) -
                     (counts_toward_a_ratio(ratio[i]) ? 1 : 0);
            ratio[i] = updated;
        } else {
            pop.direction = -pop.direction;
        }
        pop.lobbyist = i;
        ++pop.step_t;
        if (record)
            out.ps_a_trajectory.push_back(static_cast<double>(above) / n);
    }

    out.steps_used = pop.step_t;
    out.final_agents = std::move(pop.agents);
    return out;
}

} // namespace opinion
