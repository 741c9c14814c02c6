#pragma once

#include "erasure_bandit/rng.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace erasure_bandit {

using ArmIndex = std::size_t;
using Round = std::uint64_t;

enum class RewardKind { Bernoulli, GaussianUnitVariance, Deterministic };

std::string_view to_string(RewardKind kind);
/// Accepts "bernoulli", "gaussian", "deterministic". Throws std::invalid_argument.
RewardKind parse_reward_kind(std::string_view text);

/// A K-armed stochastic bandit. Immutable once built.
///
/// Means of Bernoulli and Deterministic arms lie in [0, 1]; Gaussian arms have
/// unit variance and any finite mean. The best arm is the lowest index
/// attaining the maximum mean.
class BanditInstance {
public:
    RewardKind kind() const noexcept { return kind_; }
    std::size_t arm_count() const noexcept { return means_.size(); }
    std::span<const double> means() const noexcept { return means_; }
    std::span<const double> gaps() const noexcept { return gaps_; }
    double mean(ArmIndex arm) const { return means_.at(arm); }
    double gap(ArmIndex arm) const { return gaps_.at(arm); }
    ArmIndex best_arm() const noexcept { return best_arm_; }

    friend BanditInstance make_instance(RewardKind kind, std::vector<double> means);

private:
    BanditInstance(RewardKind kind, std::vector<double> means);

    RewardKind kind_;
    std::vector<double> means_;
    std::vector<double> gaps_;
    ArmIndex best_arm_ = 0;
};

/// Throws std::invalid_argument on fewer than two arms, non-finite means, or a
/// mean outside [0, 1] for bounded kinds.
BanditInstance make_instance(RewardKind kind, std::vector<double> means);

/// K i.i.d. Uniform[0, 1] means.
std::vector<double> sample_uniform_means(std::size_t arm_count, RngStream& rng);

/// One reward from `arm`. Gaussian rewards are not clipped.
double draw_reward(const BanditInstance& instance, ArmIndex arm, RngStream& rng);

/// Noiseless instance with mean 1 on `best` and 0 elsewhere.
BanditInstance hard_instance(std::size_t arm_count, ArmIndex best);

/// Returns `instance` with its arms permuted uniformly at random.
BanditInstance shuffled(const BanditInstance& instance, RngStream& rng);

} // namespace erasure_bandit
