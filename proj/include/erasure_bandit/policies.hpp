#pragma once

#include "erasure_bandit/env.hpp"
#include "erasure_bandit/rng.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace erasure_bandit {

/// What the learner sees at the end of a round. Policies that do not use
/// feedback receive `played` and `erased` empty.
struct Feedback {
    std::optional<ArmIndex> played;
    double reward = 0.0;
    std::optional<bool> erased;
};

/// A learner. next_request(t) is called once per round, followed by
/// observe(t, ...) for the same round.
class Policy {
public:
    virtual ~Policy() = default;

    virtual std::string_view name() const = 0;
    virtual bool uses_feedback() const = 0;
    virtual std::size_t arm_count() const = 0;
    virtual ArmIndex next_request(Round t) = 0;
    virtual void observe(Round t, const Feedback& feedback) = 0;

    virtual std::vector<ArmIndex> active_arms() const = 0;
    /// Rounds spent before reward collection started (transmit or repetition).
    virtual Round overhead_rounds() const { return 0; }
};

/// 4 * sqrt(ln(K T) / (2 m)), the elimination threshold after m pulls per arm.
/// Throws std::invalid_argument unless m, K, T >= 1 and K T >= 2.
double confidence_width(std::uint64_t pulls, std::uint64_t arm_count, std::uint64_t horizon);

/// Keeps the arms whose empirical mean is within `width` of the best one.
/// `means` is indexed by arm id; only entries named in `active` are read.
std::vector<ArmIndex> eliminate(std::span<const ArmIndex> active, std::span<const double> means, double width);

/// max(1, ceil(2 ln T / ln(1/epsilon))): blind repetitions that make a delivery
/// failure unlikely over the whole horizon.
Round lsae_repetitions(Round horizon, double epsilon);

/// How a batch block moves from "transmitting arm a" to "collecting rewards for a".
struct UntilAcknowledged {};
struct FixedRepetitions {
    Round count = 1;
};
using TransmitRule = std::variant<UntilAcknowledged, FixedRepetitions>;

namespace phase {
struct Transmit {
    ArmIndex arm;
    Round sent;
    friend bool operator==(const Transmit&, const Transmit&) = default;
};
struct Collect {
    ArmIndex arm;
    std::uint64_t remaining;
    friend bool operator==(const Collect&, const Collect&) = default;
};
struct BatchBoundary {
    friend bool operator==(const BatchBoundary&, const BatchBoundary&) = default;
};
struct Committed {
    ArmIndex arm;
    friend bool operator==(const Committed&, const Committed&) = default;
};
} // namespace phase

using Phase = std::variant<phase::Transmit, phase::Collect, phase::BatchBoundary, phase::Committed>;

/// Successive arm elimination in batches. In batch i (from 1) every active arm
/// is, in index order, first transmitted according to the transmit rule and
/// then requested for m_i = 4^i rounds whose rewards form its batch mean.
/// Transmit-round rewards are discarded. After the last arm of the batch the
/// active set is pruned with confidence_width(m_i, K, T). Once one arm is left
/// it is requested for the rest of the horizon.
class BatchedElimination final : public Policy {
public:
    BatchedElimination(std::string name, std::size_t arm_count, Round horizon, TransmitRule rule);

    std::string_view name() const override { return name_; }
    bool uses_feedback() const override { return std::holds_alternative<UntilAcknowledged>(rule_); }
    std::size_t arm_count() const override { return arm_count_; }
    ArmIndex next_request(Round t) override;
    void observe(Round t, const Feedback& feedback) override;
    std::vector<ArmIndex> active_arms() const override { return active_; }
    Round overhead_rounds() const override { return overhead_rounds_; }

    std::span<const ArmIndex> active_set() const noexcept { return active_; }
    unsigned batch_index() const noexcept { return batch_index_; }
    std::uint64_t batch_size() const noexcept { return batch_size_; }
    const Phase& current_phase() const noexcept { return phase_; }
    std::optional<ArmIndex> committed_arm() const;
    const TransmitRule& transmit_rule() const noexcept { return rule_; }

    /// Means from the most recent completed batch (NaN for arms not in it).
    std::span<const double> last_batch_means() const noexcept { return last_means_; }
    /// Batch in which each arm was eliminated; 0 while still active.
    std::span<const unsigned> eliminated_in_batch() const noexcept { return eliminated_in_; }

    /// Prunes the active set and starts the next batch. Only valid at a batch
    /// boundary; throws std::logic_error otherwise.
    void eliminate();

private:
    void start_block(std::size_t position);
    void finish_transmit(ArmIndex arm);
    void finish_collect();

    std::string name_;
    std::size_t arm_count_;
    Round horizon_;
    TransmitRule rule_;

    std::vector<ArmIndex> active_;
    unsigned batch_index_ = 1;
    std::uint64_t batch_size_ = 4;
    std::size_t block_position_ = 0;
    Phase phase_;

    std::vector<double> reward_sums_;
    std::vector<std::uint64_t> reward_counts_;
    std::vector<double> last_means_;
    std::vector<unsigned> eliminated_in_;
    Round overhead_rounds_ = 0;
};

/// Stop-on-success SAE: retransmit until the feedback bit confirms delivery.
/// Does not need the erasure probability.
BatchedElimination sos_sae_policy(std::size_t arm_count, Round horizon);

/// Lingering SAE, the no-feedback baseline: lsae_repetitions(T, epsilon)
/// blind transmissions before each collection.
BatchedElimination lsae_policy(std::size_t arm_count, Round horizon, double epsilon_known);

/// Plain SAE, defined as the erasure-free specialisation of stop-on-success:
/// one transmit round (reward discarded) then m_i collection rounds.
BatchedElimination sae_policy(std::size_t arm_count, Round horizon);

/// Plain SAE run blind over an erasure channel: credits every reward to the
/// requested arm.
BatchedElimination oblivious_sae_policy(std::size_t arm_count, Round horizon);

/// Requests an arm uniformly at random every round.
class UniformRandomPolicy final : public Policy {
public:
    UniformRandomPolicy(std::size_t arm_count, RngStream rng);

    std::string_view name() const override { return "uniform_random"; }
    bool uses_feedback() const override { return false; }
    std::size_t arm_count() const override { return arm_count_; }
    ArmIndex next_request(Round t) override;
    void observe(Round, const Feedback&) override {}
    std::vector<ArmIndex> active_arms() const override;

private:
    std::size_t arm_count_;
    RngStream rng_;
};

/// Always requests the same arm.
class FixedArmPolicy final : public Policy {
public:
    FixedArmPolicy(std::size_t arm_count, ArmIndex arm);

    std::string_view name() const override { return "fixed_arm"; }
    bool uses_feedback() const override { return false; }
    std::size_t arm_count() const override { return arm_count_; }
    ArmIndex next_request(Round) override { return arm_; }
    void observe(Round, const Feedback&) override {}
    std::vector<ArmIndex> active_arms() const override { return {arm_}; }

private:
    std::size_t arm_count_;
    ArmIndex arm_;
};

enum class Algorithm { SosSae, Lsae, Sae, ObliviousSae };

std::string_view to_string(Algorithm algorithm);
/// Accepts "sos_sae", "lsae", "sae", "oblivious_sae". Throws std::invalid_argument.
Algorithm parse_algorithm(std::string_view text);

/// `epsilon` is only read by LSAE.
std::unique_ptr<Policy> make_policy(Algorithm algorithm, std::size_t arm_count, Round horizon, double epsilon);

} // namespace erasure_bandit
