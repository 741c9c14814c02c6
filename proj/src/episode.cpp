#include "erasure_bandit/episode.hpp"

#include <stdexcept>

namespace erasure_bandit {

std::size_t curve_length(Round horizon, Round stride)
{
    return static_cast<std::size_t>((horizon + stride - 1) / stride);
}

EpisodeTrace run_episode(Policy& policy, const BanditInstance& instance, double epsilon, Round horizon,
                         const EpisodeStreams& streams, const EpisodeOptions& options)
{
    if (policy.arm_count() != instance.arm_count())
        throw std::invalid_argument("policy and instance disagree on the number of arms");
    if (horizon < 1 || options.stride < 1)
        throw std::invalid_argument("horizon and stride must be positive");

    ErasureChannel channel(epsilon, streams.erasures.substream(Purpose::Erasures));
    auto fallback = streams.erasures.substream(Purpose::Fallback);
    AgentState agent = init_agent(instance.arm_count(), fallback);

    EpisodeTrace trace;
    trace.regret_curve.reserve(curve_length(horizon, options.stride));
    if (options.keep_records)
        trace.records.reserve(horizon);

    const bool feedback = policy.uses_feedback();
    double regret = 0.0;
    for (Round t = 1; t <= horizon; ++t) {
        const ArmIndex requested = policy.next_request(t);
        const auto step = channel_step(channel, agent, requested, t);
        auto reward_rng = streams.rewards.substream(t, step.played);
        const double reward = draw_reward(instance, step.played, reward_rng);

        Feedback observation{std::nullopt, reward, std::nullopt};
        if (feedback) {
            observation.played = step.played;
            observation.erased = step.erased;
        }
        policy.observe(t, observation);

        regret += instance.gaps()[step.played];
        if (options.keep_records)
            trace.records.push_back({t, requested, step.erased, step.played, reward});
        if (t % options.stride == 0 || t == horizon)
            trace.regret_curve.push_back(regret);
    }

    trace.final_regret = regret;
    trace.final_active_arms = policy.active_arms();
    if (trace.final_active_arms.size() == 1)
        trace.committed_arm = trace.final_active_arms.front();
    trace.overhead_rounds = policy.overhead_rounds();
    return trace;
}

} // namespace erasure_bandit
