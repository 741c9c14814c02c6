#include "erasure_bandit/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>

namespace erasure_bandit {

namespace {

struct ReplicationResult {
    // Indexed like AggregateResult::series.
    std::vector<std::vector<double>> curves;
    std::vector<double> overheads;
};

ReplicationResult run_replication(const ExperimentConfig& config, std::size_t replication, Round stride)
{
    const BanditInstance instance = replication_instance(config, replication);
    const RngStream root(config.root_seed);
    const RngStream rewards = root.substream(Purpose::Rewards).substream(replication);
    const RngStream erasures = root.substream(Purpose::Erasures).substream(replication);

    ReplicationResult out;
    for (std::size_t e = 0; e < config.epsilons.size(); ++e) {
        const double epsilon = config.epsilons[e];
        const EpisodeStreams streams{rewards, erasures.substream(e)};
        for (Algorithm algorithm : config.algorithms) {
            auto policy = make_policy(algorithm, config.arms, config.horizon, epsilon);
            auto trace = run_episode(*policy, instance, epsilon, config.horizon, streams, {stride, false});
            out.curves.push_back(std::move(trace.regret_curve));
            out.overheads.push_back(static_cast<double>(trace.overhead_rounds));
        }
    }
    return out;
}

} // namespace

void validate(const ExperimentConfig& config)
{
    if (config.arms < 2)
        throw ConfigError("arms must be at least 2");
    if (config.horizon < 1)
        throw ConfigError("horizon must be positive");
    if (config.epsilons.empty())
        throw ConfigError("at least one epsilon is required");
    for (double e : config.epsilons)
        if (!(e >= 0.0 && e < 1.0))
            throw ConfigError("every epsilon must lie in [0, 1)");
    if (config.algorithms.empty())
        throw ConfigError("at least one algorithm is required");
    if (config.replications < 1)
        throw ConfigError("replications must be at least 1");
    if (config.stride > config.horizon)
        throw ConfigError("stride must not exceed the horizon");
    switch (config.mean_generation) {
    case MeanGeneration::Uniform:
        break;
    case MeanGeneration::Explicit:
        if (config.explicit_means.size() != config.arms)
            throw ConfigError("explicit means must list exactly `arms` values");
        try {
            (void)make_instance(config.reward_kind, config.explicit_means);
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
        break;
    case MeanGeneration::Hard:
        if (config.hard_best >= config.arms)
            throw ConfigError("hard instance index out of range");
        if (config.reward_kind != RewardKind::Deterministic)
            throw ConfigError("hard instances require reward_kind = deterministic");
        break;
    }
}

Round effective_stride(const ExperimentConfig& config)
{
    if (config.stride > 0)
        return config.stride;
    return std::max<Round>(1, config.horizon / 1000);
}

const SeriesResult& AggregateResult::find(Algorithm algorithm, double epsilon) const
{
    for (const auto& s : series)
        if (s.algorithm == algorithm && s.epsilon == epsilon)
            return s;
    throw std::out_of_range("no such series");
}

BanditInstance replication_instance(const ExperimentConfig& config, std::size_t replication)
{
    const RngStream root(config.root_seed);
    auto instance_rng = root.substream(Purpose::Instance).substream(replication);
    auto shuffle_rng = root.substream(Purpose::Shuffle).substream(replication);

    BanditInstance instance = [&] {
        switch (config.mean_generation) {
        case MeanGeneration::Explicit: return make_instance(config.reward_kind, config.explicit_means);
        case MeanGeneration::Hard: return hard_instance(config.arms, config.hard_best);
        case MeanGeneration::Uniform: break;
        }
        return make_instance(config.reward_kind, sample_uniform_means(config.arms, instance_rng));
    }();
    return config.shuffle_arms ? shuffled(instance, shuffle_rng) : instance;
}

AggregateResult run_experiment(const ExperimentConfig& config, Execution execution)
{
    validate(config);
    const auto started = std::chrono::steady_clock::now();
    const Round stride = effective_stride(config);
    const std::size_t points = curve_length(config.horizon, stride);
    const std::size_t reps = config.replications;

    std::vector<ReplicationResult> per_rep(reps);
    if (execution == Execution::Parallel) {
        std::exception_ptr failure;
        const auto n = static_cast<std::int64_t>(reps);
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t r = 0; r < n; ++r) {
            try {
                per_rep[static_cast<std::size_t>(r)] = run_replication(config, static_cast<std::size_t>(r), stride);
            } catch (...) {
#pragma omp critical
                failure = std::current_exception();
            }
        }
        if (failure)
            std::rethrow_exception(failure);
    } else {
        for (std::size_t r = 0; r < reps; ++r)
            per_rep[r] = run_replication(config, r, stride);
    }

    AggregateResult result;
    result.replications = reps;
    result.grid.reserve(points);
    for (std::size_t k = 1; k <= points; ++k)
        result.grid.push_back(std::min<Round>(k * stride, config.horizon));

    std::size_t index = 0;
    for (double epsilon : config.epsilons) {
        for (Algorithm algorithm : config.algorithms) {
            SeriesResult s{algorithm, epsilon, std::vector<double>(points, 0.0), std::vector<double>(points, 0.0),
                           {}, 0.0};
            for (std::size_t r = 0; r < reps; ++r) {
                const auto& curve = per_rep[r].curves[index];
                for (std::size_t k = 0; k < points; ++k)
                    s.mean_regret[k] += curve[k];
                s.final_regrets.push_back(curve.back());
                s.mean_overhead_rounds += per_rep[r].overheads[index];
            }
            const auto n = static_cast<double>(reps);
            for (auto& m : s.mean_regret)
                m /= n;
            s.mean_overhead_rounds /= n;
            if (reps > 1) {
                for (std::size_t k = 0; k < points; ++k) {
                    double ss = 0.0;
                    for (std::size_t r = 0; r < reps; ++r) {
                        const double d = per_rep[r].curves[index][k] - s.mean_regret[k];
                        ss += d * d;
                    }
                    s.stderr_regret[k] = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
                }
            }
            result.series.push_back(std::move(s));
            ++index;
        }
    }

    result.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

} // namespace erasure_bandit
