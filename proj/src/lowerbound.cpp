#include "erasure_bandit/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>

namespace erasure_bandit {

Round critical_horizon(std::size_t arm_count, double epsilon)
{
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw std::invalid_argument("erasure probability must lie in [0, 1)");
    const double ratio = static_cast<double>(arm_count) / (4.0 * (1.0 - epsilon));
    return static_cast<Round>(std::ceil(ratio - 1e-9));
}

HardFamily::HardFamily(std::size_t arm_count, double epsilon)
    : arm_count_(arm_count), epsilon_(epsilon), critical_horizon_(0)
{
    if (arm_count < 2)
        throw std::invalid_argument("need at least 2 arms");
    if (!(epsilon >= 0.5 && epsilon < 1.0))
        throw std::invalid_argument("the hard family is defined for epsilon in [0.5, 1)");
    critical_horizon_ = erasure_bandit::critical_horizon(arm_count, epsilon);
}

double estimate_few_deliveries(Round window, double max_unerased, double epsilon, std::uint64_t trials,
                               const RngStream& rng, Execution execution)
{
    if (trials == 0)
        throw std::invalid_argument("trials must be positive");
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw std::invalid_argument("erasure probability must lie in [0, 1)");

    const auto n = static_cast<std::int64_t>(trials);
    std::int64_t hits = 0;
    auto trial = [&](std::int64_t j) -> std::int64_t {
        auto stream = rng.substream(static_cast<std::uint64_t>(j));
        Round delivered = 0;
        for (Round t = 0; t < window; ++t)
            delivered += stream.uniform() < epsilon ? 0 : 1;
        return static_cast<double>(delivered) <= max_unerased ? 1 : 0;
    };

    if (execution == Execution::Parallel) {
#pragma omp parallel for reduction(+ : hits) schedule(static)
        for (std::int64_t j = 0; j < n; ++j)
            hits += trial(j);
    } else {
        for (std::int64_t j = 0; j < n; ++j)
            hits += trial(j);
    }
    return static_cast<double>(hits) / static_cast<double>(trials);
}

double estimate_event_E(std::size_t arm_count, double epsilon, std::uint64_t trials, const RngStream& rng,
                        Execution execution)
{
    const HardFamily family(arm_count, epsilon);
    return estimate_few_deliveries(family.critical_horizon(), static_cast<double>(arm_count) / 4.0, epsilon,
                                   trials, rng, execution);
}

WorstCaseResult worst_case_regret(const PolicyFactory& factory, std::size_t arm_count, double epsilon, Round horizon,
                                  std::uint64_t trials, const RngStream& rng, Execution execution)
{
    const HardFamily family(arm_count, epsilon);
    if (horizon < family.critical_horizon())
        throw std::invalid_argument("horizon shorter than the critical window K/(4(1-epsilon))");
    if (trials == 0)
        throw std::invalid_argument("trials must be positive");

    const auto n = static_cast<std::int64_t>(trials);
    WorstCaseResult result;
    result.per_instance_mean.resize(arm_count);
    std::vector<double> regrets(trials);

    for (ArmIndex best = 0; best < arm_count; ++best) {
        const BanditInstance instance = family.instance(best);
        auto trial = [&](std::int64_t j) {
            const auto base = rng.substream(best, static_cast<std::uint64_t>(j));
            auto policy = factory({arm_count, horizon, epsilon, base.substream(Purpose::Policy)});
            const EpisodeStreams streams{base.substream(Purpose::Rewards), base.substream(Purpose::Erasures)};
            regrets[static_cast<std::size_t>(j)] =
                run_episode(*policy, instance, epsilon, horizon, streams, {horizon, false}).final_regret;
        };

        if (execution == Execution::Parallel) {
            std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
            for (std::int64_t j = 0; j < n; ++j) {
                try {
                    trial(j);
                } catch (...) {
#pragma omp critical
                    failure = std::current_exception();
                }
            }
            if (failure)
                std::rethrow_exception(failure);
        } else {
            for (std::int64_t j = 0; j < n; ++j)
                trial(j);
        }

        double sum = 0.0;
        for (double r : regrets)
            sum += r;
        result.per_instance_mean[best] = sum / static_cast<double>(trials);
    }

    const auto worst = std::max_element(result.per_instance_mean.begin(), result.per_instance_mean.end());
    result.worst = *worst;
    result.argworst = static_cast<ArmIndex>(worst - result.per_instance_mean.begin());
    return result;
}

} // namespace erasure_bandit
