#pragma once

#include "erasure_bandit/env.hpp"
#include "erasure_bandit/episode.hpp"
#include "erasure_bandit/policies.hpp"
#include "erasure_bandit/rng.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace erasure_bandit {

/// ceil(K / (4 (1 - epsilon))), the window in which too few deliveries get
/// through to locate the unit-mean arm. Ratios within 1e-9 of an integer are
/// treated as that integer: K = 8, epsilon = 0.9 gives 20.
Round critical_horizon(std::size_t arm_count, double epsilon);

/// The noiseless family nu_0..nu_{K-1}: in nu_i only arm i pays 1.
class HardFamily {
public:
    /// Throws std::invalid_argument unless K >= 2 and epsilon in [0.5, 1).
    HardFamily(std::size_t arm_count, double epsilon);

    std::size_t arm_count() const noexcept { return arm_count_; }
    double epsilon() const noexcept { return epsilon_; }
    Round critical_horizon() const noexcept { return critical_horizon_; }
    BanditInstance instance(ArmIndex best) const { return hard_instance(arm_count_, best); }

private:
    std::size_t arm_count_;
    double epsilon_;
    Round critical_horizon_;
};

/// Monte Carlo estimate of P[at most `max_unerased` of `window` i.i.d.
/// transmissions get through]. Trial j uses rng.substream(j), and erasures are
/// drawn as u < epsilon, so for a fixed seed the estimate is pathwise
/// non-decreasing in epsilon.
double estimate_few_deliveries(Round window, double max_unerased, double epsilon, std::uint64_t trials,
                               const RngStream& rng, Execution execution = Execution::Parallel);

/// P[E]: at most K/4 deliveries within the first critical_horizon(K, epsilon)
/// rounds. Throws std::invalid_argument if epsilon < 0.5 or trials == 0.
double estimate_event_E(std::size_t arm_count, double epsilon, std::uint64_t trials, const RngStream& rng,
                        Execution execution = Execution::Parallel);

struct PolicyContext {
    std::size_t arm_count;
    Round horizon;
    double epsilon;
    RngStream rng;
};

using PolicyFactory = std::function<std::unique_ptr<Policy>(const PolicyContext&)>;

struct WorstCaseResult {
    std::vector<double> per_instance_mean;
    double worst = 0.0;
    ArmIndex argworst = 0;
};

/// Mean pseudo-regret of fresh policies over `trials` episodes on each nu_i,
/// and the maximum over i (lowest i on ties). Trial j on nu_i draws its
/// randomness from rng.substream(i, j).
///
/// Throws std::invalid_argument if horizon < critical_horizon(K, epsilon).
WorstCaseResult worst_case_regret(const PolicyFactory& factory, std::size_t arm_count, double epsilon, Round horizon,
                                  std::uint64_t trials, const RngStream& rng,
                                  Execution execution = Execution::Parallel);

} // namespace erasure_bandit
