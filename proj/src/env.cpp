#include "erasure_bandit/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace erasure_bandit {

std::string_view to_string(RewardKind kind)
{
    switch (kind) {
    case RewardKind::Bernoulli: return "bernoulli";
    case RewardKind::GaussianUnitVariance: return "gaussian";
    case RewardKind::Deterministic: return "deterministic";
    }
    return "unknown";
}

RewardKind parse_reward_kind(std::string_view text)
{
    if (text == "bernoulli") return RewardKind::Bernoulli;
    if (text == "gaussian") return RewardKind::GaussianUnitVariance;
    if (text == "deterministic") return RewardKind::Deterministic;
    throw std::invalid_argument("unknown reward kind: " + std::string(text));
}

BanditInstance::BanditInstance(RewardKind kind, std::vector<double> means)
    : kind_(kind), means_(std::move(means))
{
    if (means_.size() < 2)
        throw std::invalid_argument("a bandit instance needs at least 2 arms");
    const bool bounded = kind_ != RewardKind::GaussianUnitVariance;
    for (double mu : means_) {
        if (!std::isfinite(mu))
            throw std::invalid_argument("arm means must be finite");
        if (bounded && (mu < 0.0 || mu > 1.0))
            throw std::invalid_argument("arm mean outside [0, 1] for a bounded reward kind");
    }
    // max_element returns the first maximum, which is the tie-break we want.
    best_arm_ = static_cast<ArmIndex>(std::max_element(means_.begin(), means_.end()) - means_.begin());
    const double best = means_[best_arm_];
    gaps_.reserve(means_.size());
    for (double mu : means_)
        gaps_.push_back(best - mu);
}

BanditInstance make_instance(RewardKind kind, std::vector<double> means)
{
    return BanditInstance(kind, std::move(means));
}

std::vector<double> sample_uniform_means(std::size_t arm_count, RngStream& rng)
{
    if (arm_count < 2)
        throw std::invalid_argument("need at least 2 arms");
    std::vector<double> means(arm_count);
    for (double& mu : means)
        mu = rng.uniform();
    return means;
}

double draw_reward(const BanditInstance& instance, ArmIndex arm, RngStream& rng)
{
    if (arm >= instance.arm_count())
        throw std::out_of_range("arm index out of range");
    const double mu = instance.means()[arm];
    switch (instance.kind()) {
    case RewardKind::Bernoulli: return rng.uniform() < mu ? 1.0 : 0.0;
    case RewardKind::GaussianUnitVariance: return mu + rng.standard_normal();
    case RewardKind::Deterministic: return mu;
    }
    return mu;
}

BanditInstance hard_instance(std::size_t arm_count, ArmIndex best)
{
    if (arm_count < 2)
        throw std::invalid_argument("need at least 2 arms");
    if (best >= arm_count)
        throw std::out_of_range("best arm index out of range");
    std::vector<double> means(arm_count, 0.0);
    means[best] = 1.0;
    return make_instance(RewardKind::Deterministic, std::move(means));
}

BanditInstance shuffled(const BanditInstance& instance, RngStream& rng)
{
    std::vector<double> means(instance.means().begin(), instance.means().end());
    for (std::size_t i = means.size() - 1; i > 0; --i)
        std::swap(means[i], means[rng.uniform_index(i + 1)]);
    return make_instance(instance.kind(), std::move(means));
}

} // namespace erasure_bandit
