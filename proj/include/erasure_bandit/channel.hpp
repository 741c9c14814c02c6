#pragma once

#include "erasure_bandit/env.hpp"
#include "erasure_bandit/rng.hpp"

#include <functional>
#include <vector>

namespace erasure_bandit {

/// EC(epsilon): each transmission is erased independently with probability
/// epsilon in [0, 1).
class ErasureChannel {
public:
    ErasureChannel(double epsilon, RngStream erasures);

    double epsilon() const noexcept { return epsilon_; }

    /// One i.i.d. Bernoulli(epsilon) erasure indicator.
    bool draw_erasure() noexcept { return erasures_.uniform() < epsilon_; }

private:
    double epsilon_;
    RngStream erasures_;
};

/// The agent pulls the last arm it successfully received. Before the first
/// success it holds a uniformly drawn fallback arm, used only if round 1 is
/// erased.
struct AgentState {
    std::size_t arm_count = 0;
    ArmIndex held_arm = 0;
    bool initialized = false;
};

/// Throws std::invalid_argument if arm_count < 2.
AgentState init_agent(std::size_t arm_count, RngStream& rng);

struct RoundRecord {
    Round t = 0;
    ArmIndex requested = 0;
    bool erased = false;
    ArmIndex played = 0;
    double reward = 0.0;

    friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct StepOutcome {
    bool erased = false;
    ArmIndex played = 0;
};

/// Transmits `requested` for round t and resolves which arm the agent plays.
/// The returned erasure bit is exactly what the learner observes.
StepOutcome channel_step(ErasureChannel& channel, AgentState& agent, ArmIndex requested, Round t);

using RewardSource = std::function<double(Round, ArmIndex)>;

struct TransmitResult {
    Round attempts = 0;
    bool success = false;
    std::vector<RoundRecord> rounds;
};

/// Retransmits `requested` from round t until an unerased round or until the
/// horizon is exhausted. Every consumed round yields a reward for the arm the
/// agent actually played. Horizon exhaustion returns success == false.
TransmitResult transmit_until_success(ErasureChannel& channel, AgentState& agent, ArmIndex requested,
                                      Round t, Round horizon, const RewardSource& reward);

} // namespace erasure_bandit
