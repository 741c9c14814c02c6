#pragma once

#include "erasure_bandit/channel.hpp"
#include "erasure_bandit/env.hpp"
#include "erasure_bandit/policies.hpp"
#include "erasure_bandit/rng.hpp"

#include <optional>
#include <vector>

namespace erasure_bandit {

/// Parallel entry points take this; Serial is the reference implementation
/// and produces bit-identical results.
enum class Execution { Serial, Parallel };

/// Randomness for one episode. Rewards are drawn from
/// rewards.substream(t, played_arm), so two policies that play the same arm
/// in the same round see the same reward. Erasures are one draw per round from
/// erasures.substream(Erasures); the round-1 fallback arm comes from
/// erasures.substream(Fallback).
struct EpisodeStreams {
    RngStream rewards;
    RngStream erasures;
};

struct EpisodeOptions {
    /// Sample the cumulative regret every `stride` rounds (and at T).
    Round stride = 1;
    bool keep_records = false;
};

struct EpisodeTrace {
    std::vector<RoundRecord> records;
    /// Cumulative pseudo-regret at min(k * stride, T), k = 1..ceil(T / stride).
    std::vector<double> regret_curve;
    double final_regret = 0.0;
    std::vector<ArmIndex> final_active_arms;
    std::optional<ArmIndex> committed_arm;
    Round overhead_rounds = 0;
};

/// Number of regret samples for a horizon and stride.
std::size_t curve_length(Round horizon, Round stride);

/// Runs one episode of `horizon` rounds. Policies that do not use feedback get
/// the played arm and erasure bit masked out. Regret is the pseudo-regret
/// sum of gaps of the arms actually played.
///
/// Throws std::invalid_argument if the policy and instance disagree on K, or
/// the horizon or stride is zero.
EpisodeTrace run_episode(Policy& policy, const BanditInstance& instance, double epsilon, Round horizon,
                         const EpisodeStreams& streams, const EpisodeOptions& options = {});

} // namespace erasure_bandit
