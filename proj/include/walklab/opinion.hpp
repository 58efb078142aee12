#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "walklab/rng.hpp"

// Ring of agents holding two continuous preference weights (c_A, c_B).
// One step = one persuasion attempt between the current lobbyist and its
// neighbour in the propagation direction; success pulls the listener's
// weights toward the lobbyist's revealed ratio, failure reverses the
// propagation direction. A run ends at consensus (all agents on the same
// side) or at a step cap.
namespace opinion {

enum class Choice { A, B };

// preference weights; each stays clamped to [0, 1] and they never both
// vanish (the update rule cannot drive the sum to zero)
struct OpinionState {
    double c_a = 0.5;
    double c_b = 0.5;
};

// p_A = c_A / (c_A + c_B); throws std::domain_error on a degenerate
// all-zero state (unreachable through the update rule)
double preference_ratio(const OpinionState& agent);

// A iff p_A > 1/2; the exact tie reveals B
Choice revealed_choice(const OpinionState& agent);

// whether an agent counts toward A in the social preference: the ratio
// rounded to 0 or 1, so the exact tie p_A = 1/2 counts toward A (this is
// the rounding rule, deliberately not revealed_choice)
inline bool counts_toward_a_ratio(double p_a) { return std::floor(p_a + 0.5) >= 1.0; }
bool counts_toward_a(const OpinionState& agent);

// social-pressure / peer-influence mix from precomputed ratios:
// alpha * |p_sA - p_iA| + (1 - alpha) * (1 - |p_jA - p_iA|), in [0, 1]
inline double decision_factor_from_ratios(double listener_ratio, double lobbyist_ratio,
                                          double p_sa, double alpha) {
    return alpha * std::abs(p_sa - listener_ratio) +
           (1.0 - alpha) * (1.0 - std::abs(lobbyist_ratio - listener_ratio));
}
double decision_factor(const OpinionState& listener, const OpinionState& lobbyist, double p_sa,
                       double alpha);

// successful persuasion: both weights shifted by delta = mu * (p_jA - p_iA)
// (plus toward A, minus toward B), each clamped back into [0, 1]
OpinionState apply_persuasion(OpinionState listener, double lobbyist_ratio, double mu);

struct ModelParams {
    double alpha = 0.5;          // social-pressure weight, [0, 1]
    double mu = 1.0;             // peer-influence strength, [0, 1]
    int n_agents = 25;           // ring size, >= 2
    std::uint64_t seed = 0;
    std::int64_t max_steps = 10'000'000;

    void validate() const; // throws std::invalid_argument
};

struct OpinionPopulation {
    std::vector<OpinionState> agents; // ring order
    int lobbyist = 0;
    int direction = +1; // +1 or -1, the sense opinions propagate around the ring
    std::int64_t step_t = 0;

    int size() const { return static_cast<int>(agents.size()); }
    int listener() const {
        const int n = size();
        return ((lobbyist + direction) % n + n) % n;
    }
};

// p_{s,A}: the fraction of agents whose ratio rounds to 1
double social_preference(const OpinionPopulation& pop);

namespace detail {

// One interaction at the given social preference. Mutates pop in place and
// returns whether the persuasion succeeded; a failure leaves every opinion
// state bit-identical and only flips the direction.
template <class Rng>
bool interact(OpinionPopulation& pop, const ModelParams& params, double p_sa, Rng& rng) {
    const int i = pop.listener();
    const int j = pop.lobbyist;
    const double factor = decision_factor(pop.agents[i], pop.agents[j], p_sa, params.alpha);
    const bool success = factor > rng.uniform01(); // P == r counts as failure
    if (success) {
        pop.agents[i] = apply_persuasion(pop.agents[i], preference_ratio(pop.agents[j]), params.mu);
    } else {
        pop.direction = -pop.direction;
    }
    pop.lobbyist = i; // listener persuades next, in either outcome
    ++pop.step_t;
    return success;
}

} // namespace detail

// one persuasion attempt, recomputing the social preference from the
// current states; draws exactly one uniform number from rng
template <class Rng>
bool persuasion_step(OpinionPopulation& pop, const ModelParams& params, Rng& rng) {
    return detail::interact(pop, params, social_preference(pop), rng);
}

struct RunOutcome {
    enum class Termination { ConsensusA, ConsensusB, StepCapReached };

    Termination termination = Termination::StepCapReached;
    std::int64_t steps_used = 0;
    std::uint64_t seed = 0;
    std::vector<OpinionState> final_agents;
    std::vector<double> ps_a_trajectory; // p_sA at t = 0..steps_used; only when requested
};

enum class TrajectoryLog { Off, On };

// fresh population: per agent c_A then c_B, independent uniform on the open
// interval (0, 1), then the first lobbyist index, then the direction — the
// draw order is part of the reproducibility contract
OpinionPopulation random_population(const ModelParams& params, harness::RngStream& rng);

// full run from a seeded random start; the consensus check precedes the
// first step, so a unanimous start terminates with steps_used = 0
RunOutcome run(const ModelParams& params, TrajectoryLog log = TrajectoryLog::Off);

} // namespace opinion
