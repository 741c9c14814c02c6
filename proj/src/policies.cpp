#include "erasure_bandit/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace erasure_bandit {

double confidence_width(std::uint64_t pulls, std::uint64_t arm_count, std::uint64_t horizon)
{
    if (pulls < 1 || arm_count < 1 || horizon < 1)
        throw std::invalid_argument("confidence_width: m, K and T must be positive");
    const double kt = static_cast<double>(arm_count) * static_cast<double>(horizon);
    if (kt < 2.0)
        throw std::invalid_argument("confidence_width: K*T must be at least 2");
    return 4.0 * std::sqrt(std::log(kt) / (2.0 * static_cast<double>(pulls)));
}

std::vector<ArmIndex> eliminate(std::span<const ArmIndex> active, std::span<const double> means, double width)
{
    if (active.empty())
        throw std::invalid_argument("eliminate: empty active set");
    double leader = -std::numeric_limits<double>::infinity();
    for (ArmIndex a : active)
        leader = std::max(leader, means[a]);
    std::vector<ArmIndex> survivors;
    for (ArmIndex a : active)
        if (leader - means[a] <= width)
            survivors.push_back(a);
    return survivors;
}

Round lsae_repetitions(Round horizon, double epsilon)
{
    if (horizon < 1)
        throw std::invalid_argument("horizon must be positive");
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw std::invalid_argument("erasure probability must lie in [0, 1)");
    if (epsilon == 0.0)
        return 1;
    const double alpha = std::ceil(2.0 * std::log(static_cast<double>(horizon)) / std::log(1.0 / epsilon));
    return std::max<Round>(1, static_cast<Round>(alpha));
}

// ---------------------------------------------------------------------------

BatchedElimination::BatchedElimination(std::string name, std::size_t arm_count, Round horizon, TransmitRule rule)
    : name_(std::move(name)),
      arm_count_(arm_count),
      horizon_(horizon),
      rule_(rule),
      phase_(phase::BatchBoundary{}),
      reward_sums_(arm_count, 0.0),
      reward_counts_(arm_count, 0),
      last_means_(arm_count, std::numeric_limits<double>::quiet_NaN()),
      eliminated_in_(arm_count, 0)
{
    if (arm_count < 2)
        throw std::invalid_argument("need at least 2 arms");
    if (horizon < 1)
        throw std::invalid_argument("horizon must be positive");
    active_.resize(arm_count);
    std::iota(active_.begin(), active_.end(), ArmIndex{0});
    start_block(0);
}

std::optional<ArmIndex> BatchedElimination::committed_arm() const
{
    if (const auto* c = std::get_if<phase::Committed>(&phase_))
        return c->arm;
    return std::nullopt;
}

ArmIndex BatchedElimination::next_request(Round /*t*/)
{
    return std::visit(
        [](const auto& p) -> ArmIndex {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, phase::BatchBoundary>)
                throw std::logic_error("next_request at an unresolved batch boundary");
            else
                return p.arm;
        },
        phase_);
}

void BatchedElimination::observe(Round /*t*/, const Feedback& feedback)
{
    if (auto* tx = std::get_if<phase::Transmit>(&phase_)) {
        ++tx->sent;
        ++overhead_rounds_;
        bool done = false;
        if (const auto* fixed = std::get_if<FixedRepetitions>(&rule_)) {
            done = tx->sent >= fixed->count;
        } else {
            if (!feedback.erased)
                throw std::logic_error("stop-on-success needs the erasure feedback bit");
            done = !*feedback.erased;
        }
        if (done)
            finish_transmit(tx->arm);
    } else if (auto* collect = std::get_if<phase::Collect>(&phase_)) {
        reward_sums_[collect->arm] += feedback.reward;
        ++reward_counts_[collect->arm];
        if (--collect->remaining == 0)
            finish_collect();
    }
}

void BatchedElimination::start_block(std::size_t position)
{
    block_position_ = position;
    const ArmIndex arm = active_[position];
    const auto* fixed = std::get_if<FixedRepetitions>(&rule_);
    if (fixed && fixed->count == 0)
        phase_ = phase::Collect{arm, batch_size_};
    else
        phase_ = phase::Transmit{arm, 0};
}

void BatchedElimination::finish_transmit(ArmIndex arm)
{
    phase_ = phase::Collect{arm, batch_size_};
}

void BatchedElimination::finish_collect()
{
    if (block_position_ + 1 < active_.size()) {
        start_block(block_position_ + 1);
        return;
    }
    phase_ = phase::BatchBoundary{};
    eliminate();
}

void BatchedElimination::eliminate()
{
    if (!std::holds_alternative<phase::BatchBoundary>(phase_))
        throw std::logic_error("eliminate called in the middle of a batch");

    std::fill(last_means_.begin(), last_means_.end(), std::numeric_limits<double>::quiet_NaN());
    for (ArmIndex a : active_)
        last_means_[a] = reward_sums_[a] / static_cast<double>(reward_counts_[a]);

    auto survivors = erasure_bandit::eliminate(active_, last_means_,
                                               confidence_width(batch_size_, arm_count_, horizon_));
    for (ArmIndex a : active_)
        if (!std::binary_search(survivors.begin(), survivors.end(), a))
            eliminated_in_[a] = batch_index_;
    active_ = std::move(survivors);

    ++batch_index_;
    constexpr std::uint64_t cap = std::numeric_limits<std::uint64_t>::max() / 4;
    batch_size_ = batch_size_ > cap ? std::numeric_limits<std::uint64_t>::max() : batch_size_ * 4;
    std::fill(reward_sums_.begin(), reward_sums_.end(), 0.0);
    std::fill(reward_counts_.begin(), reward_counts_.end(), 0);

    if (active_.size() == 1)
        phase_ = phase::Committed{active_.front()};
    else
        start_block(0);
}

BatchedElimination sos_sae_policy(std::size_t arm_count, Round horizon)
{
    return BatchedElimination("sos_sae", arm_count, horizon, UntilAcknowledged{});
}

BatchedElimination lsae_policy(std::size_t arm_count, Round horizon, double epsilon_known)
{
    return BatchedElimination("lsae", arm_count, horizon,
                              FixedRepetitions{lsae_repetitions(horizon, epsilon_known)});
}

BatchedElimination sae_policy(std::size_t arm_count, Round horizon)
{
    return BatchedElimination("sae", arm_count, horizon, FixedRepetitions{1});
}

BatchedElimination oblivious_sae_policy(std::size_t arm_count, Round horizon)
{
    return BatchedElimination("oblivious_sae", arm_count, horizon, FixedRepetitions{1});
}

// ---------------------------------------------------------------------------

UniformRandomPolicy::UniformRandomPolicy(std::size_t arm_count, RngStream rng)
    : arm_count_(arm_count), rng_(rng)
{
    if (arm_count < 2)
        throw std::invalid_argument("need at least 2 arms");
}

ArmIndex UniformRandomPolicy::next_request(Round /*t*/)
{
    return static_cast<ArmIndex>(rng_.uniform_index(arm_count_));
}

std::vector<ArmIndex> UniformRandomPolicy::active_arms() const
{
    std::vector<ArmIndex> arms(arm_count_);
    std::iota(arms.begin(), arms.end(), ArmIndex{0});
    return arms;
}

FixedArmPolicy::FixedArmPolicy(std::size_t arm_count, ArmIndex arm) : arm_count_(arm_count), arm_(arm)
{
    if (arm >= arm_count)
        throw std::out_of_range("arm index out of range");
}

// ---------------------------------------------------------------------------

std::string_view to_string(Algorithm algorithm)
{
    switch (algorithm) {
    case Algorithm::SosSae: return "sos_sae";
    case Algorithm::Lsae: return "lsae";
    case Algorithm::Sae: return "sae";
    case Algorithm::ObliviousSae: return "oblivious_sae";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view text)
{
    for (auto a : {Algorithm::SosSae, Algorithm::Lsae, Algorithm::Sae, Algorithm::ObliviousSae})
        if (text == to_string(a))
            return a;
    throw std::invalid_argument("unknown algorithm: " + std::string(text));
}

std::unique_ptr<Policy> make_policy(Algorithm algorithm, std::size_t arm_count, Round horizon, double epsilon)
{
    switch (algorithm) {
    case Algorithm::SosSae: return std::make_unique<BatchedElimination>(sos_sae_policy(arm_count, horizon));
    case Algorithm::Lsae: return std::make_unique<BatchedElimination>(lsae_policy(arm_count, horizon, epsilon));
    case Algorithm::Sae: return std::make_unique<BatchedElimination>(sae_policy(arm_count, horizon));
    case Algorithm::ObliviousSae:
        return std::make_unique<BatchedElimination>(oblivious_sae_policy(arm_count, horizon));
    }
    throw std::invalid_argument("unknown algorithm");
}

} // namespace erasure_bandit
