// Runs a regret experiment over erasure channels and writes CSV/JSON/SVG output.
//
//   erasure-bandit --arms 20 --horizon 2e5 --epsilon 0.5,0.9,0.95 --reps 50 --out results --plot
//
// Exit codes: 0 success, 1 configuration error, 2 I/O error.

#include "erasure_bandit/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

int main(int argc, char** argv)
{
    using namespace erasure_bandit;

    CLI::App app{"Multi-armed bandits over arm-erasure channels"};

    std::string config_path;
    std::vector<std::pair<std::string, std::optional<std::string>>> overrides = {
        {"arms", {}}, {"horizon", {}}, {"epsilon", {}}, {"algos", {}}, {"reps", {}}, {"seed", {}},
        {"out", {}},  {"stride", {}},  {"reward_kind", {}}, {"means", {}},
    };
    bool plot = false;
    bool no_shuffle = false;
    bool serial = false;

    app.add_option("--config", config_path, "INI-style key = value file; flags override it");
    app.add_option("--arms", overrides[0].second, "number of arms K");
    app.add_option("--horizon", overrides[1].second, "horizon T (2e5 style accepted)");
    app.add_option("--epsilon", overrides[2].second, "comma-separated erasure probabilities");
    app.add_option("--algos", overrides[3].second, "comma-separated subset of sos_sae,lsae,sae,oblivious_sae");
    app.add_option("--reps", overrides[4].second, "replications per (epsilon, algorithm)");
    app.add_option("--seed", overrides[5].second, "root seed");
    app.add_option("--out", overrides[6].second, "output directory");
    app.add_option("--stride", overrides[7].second, "regret snapshot stride (default T/1000)");
    app.add_option("--kind", overrides[8].second, "reward kind: gaussian, bernoulli, deterministic");
    app.add_option("--means", overrides[9].second, "uniform | hard:<i> | comma-separated means");
    app.add_flag("--plot", plot, "also write regret.svg");
    app.add_flag("--no-shuffle", no_shuffle, "keep arm order fixed across replications");
    app.add_flag("--serial", serial, "run replications on one thread");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    ExperimentConfig config;
    try {
        if (!config_path.empty())
            config = load_config(config_path, config);
        for (const auto& [key, value] : overrides)
            if (value)
                apply_setting(config, key, *value);
        if (plot)
            config.plot = true;
        if (no_shuffle)
            config.shuffle_arms = false;
        validate(config);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    }

    try {
        const auto result = run_experiment(config, serial ? Execution::Serial : Execution::Parallel);
        const auto paths = emit_outputs(result, config);
        for (const auto& s : result.series)
            std::cout << to_string(s.algorithm) << " epsilon=" << s.epsilon << " final_regret=" << s.mean_regret.back()
                      << " +- " << s.stderr_regret.back() << '\n';
        std::cout << "wrote " << paths.csv.string() << ", " << paths.json.string();
        if (!paths.svg.empty())
            std::cout << ", " << paths.svg.string();
        std::cout << " in " << result.runtime_seconds << " s\n";
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
