#include "erasure_bandit/channel.hpp"

#include <stdexcept>

namespace erasure_bandit {

ErasureChannel::ErasureChannel(double epsilon, RngStream erasures)
    : epsilon_(epsilon), erasures_(erasures)
{
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw std::invalid_argument("erasure probability must lie in [0, 1)");
}

AgentState init_agent(std::size_t arm_count, RngStream& rng)
{
    if (arm_count < 2)
        throw std::invalid_argument("need at least 2 arms");
    return AgentState{arm_count, static_cast<ArmIndex>(rng.uniform_index(arm_count)), false};
}

StepOutcome channel_step(ErasureChannel& channel, AgentState& agent, ArmIndex requested, Round /*t*/)
{
    if (requested >= agent.arm_count)
        throw std::out_of_range("requested arm out of range");
    const bool erased = channel.draw_erasure();
    if (!erased)
        agent.held_arm = requested;
    agent.initialized = true;
    return {erased, agent.held_arm};
}

TransmitResult transmit_until_success(ErasureChannel& channel, AgentState& agent, ArmIndex requested,
                                      Round t, Round horizon, const RewardSource& reward)
{
    if (t < 1 || t > horizon)
        throw std::invalid_argument("round outside the horizon");
    TransmitResult result;
    for (; t <= horizon; ++t) {
        const auto step = channel_step(channel, agent, requested, t);
        result.rounds.push_back({t, requested, step.erased, step.played, reward(t, step.played)});
        ++result.attempts;
        if (!step.erased) {
            result.success = true;
            break;
        }
    }
    return result;
}

} // namespace erasure_bandit
