#pragma once

#include "erasure_bandit/env.hpp"
#include "erasure_bandit/episode.hpp"
#include "erasure_bandit/policies.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace erasure_bandit {

/// Invalid configuration (CLI exit code 1).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Output could not be written (CLI exit code 2).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class MeanGeneration { Uniform, Explicit, Hard };

struct ExperimentConfig {
    std::size_t arms = 10;
    Round horizon = 100'000;
    std::vector<double> epsilons{0.5, 0.9, 0.95};
    std::vector<Algorithm> algorithms{Algorithm::SosSae, Algorithm::Lsae};
    std::size_t replications = 10;
    RewardKind reward_kind = RewardKind::GaussianUnitVariance;
    MeanGeneration mean_generation = MeanGeneration::Uniform;
    std::vector<double> explicit_means;
    ArmIndex hard_best = 0;
    bool shuffle_arms = true;
    std::uint64_t root_seed = 1;
    std::filesystem::path output_dir = "results";
    /// 0 selects max(1, T / 1000).
    Round stride = 0;
    bool plot = false;
};

/// Throws ConfigError describing the first problem found.
void validate(const ExperimentConfig& config);

Round effective_stride(const ExperimentConfig& config);

/// One (algorithm, epsilon) curve aggregated over replications.
struct SeriesResult {
    Algorithm algorithm;
    double epsilon;
    std::vector<double> mean_regret;
    std::vector<double> stderr_regret;
    /// Final regret of each replication, in replication order.
    std::vector<double> final_regrets;
    double mean_overhead_rounds = 0.0;
};

struct AggregateResult {
    /// Rounds at which the curves are sampled.
    std::vector<Round> grid;
    /// Ordered by epsilon (outer) then algorithm, as listed in the config.
    std::vector<SeriesResult> series;
    std::size_t replications = 0;
    double runtime_seconds = 0.0;

    const SeriesResult& find(Algorithm algorithm, double epsilon) const;
};

/// The instance replication `rep` runs on: generated means, then shuffled when
/// enabled. Shared by every (epsilon, algorithm) pair of that replication.
BanditInstance replication_instance(const ExperimentConfig& config, std::size_t replication);

/// Runs every (epsilon, algorithm, replication) episode. Within a replication
/// all algorithms face the same instance, reward substream and erasure
/// substream. Replications run in parallel under Execution::Parallel; the
/// reduction is in replication order, so both modes agree bit for bit.
AggregateResult run_experiment(const ExperimentConfig& config, Execution execution = Execution::Parallel);

struct OutputPaths {
    std::filesystem::path csv;
    std::filesystem::path json;
    std::filesystem::path svg; // empty unless plotting was requested
};

inline constexpr const char* kCsvHeader = "t,algorithm,epsilon,mean_regret,stderr_regret,replications";

/// Writes regret_curves.csv, summary.json and, if config.plot, regret.svg into
/// config.output_dir. Throws IoError on failure.
OutputPaths emit_outputs(const AggregateResult& result, const ExperimentConfig& config);

std::string curves_csv(const AggregateResult& result);
std::string summary_json(const AggregateResult& result, const ExperimentConfig& config);
std::string regret_svg(const AggregateResult& result);

/// Parses flat `key = value` text. Blank lines, `#`/`;` comments and
/// `[section]` headers are ignored. Keys: arms, horizon, epsilon, algos, reps,
/// seed, out, stride, plot, reward_kind, means, shuffle. Throws ConfigError.
ExperimentConfig parse_config(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

/// Applies one key/value pair; shared by the file parser and CLI overrides.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

} // namespace erasure_bandit
