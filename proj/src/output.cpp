#include "erasure_bandit/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace erasure_bandit {

namespace {

std::string format_real(double value)
{
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void write_file(const std::filesystem::path& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << contents;
    out.flush();
    if (!out)
        throw IoError("failed writing " + path.string());
}

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value)
{
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ','))
        if (auto t = trim(item); !t.empty())
            items.push_back(std::move(t));
    return items;
}

double parse_real(const std::string& key, const std::string& text)
{
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end)
        throw ConfigError(key + ": not a number: '" + text + "'");
    return value;
}

std::uint64_t parse_count(const std::string& key, const std::string& text)
{
    std::uint64_t value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec == std::errc() && ptr == end)
        return value;
    // Accept integral scientific notation such as 2e5.
    const double real = parse_real(key, text);
    if (real < 0 || real != std::floor(real) || real > 9.0e15)
        throw ConfigError(key + ": expected a non-negative integer, got '" + text + "'");
    return static_cast<std::uint64_t>(real);
}

bool parse_bool(const std::string& key, const std::string& text)
{
    if (text == "true" || text == "1" || text == "yes" || text == "on")
        return true;
    if (text == "false" || text == "0" || text == "no" || text == "off")
        return false;
    throw ConfigError(key + ": expected a boolean, got '" + text + "'");
}

std::string_view to_string(MeanGeneration g)
{
    switch (g) {
    case MeanGeneration::Uniform: return "uniform";
    case MeanGeneration::Explicit: return "explicit";
    case MeanGeneration::Hard: return "hard";
    }
    return "unknown";
}

} // namespace

// ---------------------------------------------------------------------------
// Config

void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& raw)
{
    const std::string value = trim(raw);
    if (key == "arms") {
        config.arms = parse_count(key, value);
    } else if (key == "horizon") {
        config.horizon = parse_count(key, value);
    } else if (key == "epsilon") {
        config.epsilons.clear();
        for (const auto& item : split_list(value))
            config.epsilons.push_back(parse_real(key, item));
    } else if (key == "algos") {
        config.algorithms.clear();
        for (const auto& item : split_list(value)) {
            try {
                config.algorithms.push_back(parse_algorithm(item));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }
    } else if (key == "reps") {
        config.replications = parse_count(key, value);
    } else if (key == "seed") {
        config.root_seed = parse_count(key, value);
    } else if (key == "out") {
        if (value.empty())
            throw ConfigError("out: empty path");
        config.output_dir = value;
    } else if (key == "stride") {
        config.stride = parse_count(key, value);
        if (config.stride == 0)
            throw ConfigError("stride must be positive");
    } else if (key == "plot") {
        config.plot = parse_bool(key, value);
    } else if (key == "shuffle") {
        config.shuffle_arms = parse_bool(key, value);
    } else if (key == "reward_kind") {
        try {
            config.reward_kind = parse_reward_kind(value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    } else if (key == "means") {
        if (value == "uniform") {
            config.mean_generation = MeanGeneration::Uniform;
        } else if (value.rfind("hard:", 0) == 0) {
            config.mean_generation = MeanGeneration::Hard;
            config.hard_best = parse_count(key, value.substr(5));
        } else {
            config.mean_generation = MeanGeneration::Explicit;
            config.explicit_means.clear();
            for (const auto& item : split_list(value))
                config.explicit_means.push_back(parse_real(key, item));
        }
    } else {
        throw ConfigError("unknown config key: '" + key + "'");
    }
}

ExperimentConfig parse_config(const std::string& text, ExperimentConfig base)
{
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string content = trim(line);
        if (content.empty() || content[0] == '#' || content[0] == ';' || content[0] == '[')
            continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        apply_setting(base, trim(content.substr(0, eq)), content.substr(eq + 1));
    }
    return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), std::move(base));
}

// ---------------------------------------------------------------------------
// Outputs

std::string curves_csv(const AggregateResult& result)
{
    std::string csv = kCsvHeader;
    csv += '\n';
    const std::string reps = std::to_string(result.replications);
    for (const auto& s : result.series) {
        const std::string prefix = "," + std::string(to_string(s.algorithm)) + "," + format_real(s.epsilon) + ",";
        for (std::size_t k = 0; k < result.grid.size(); ++k) {
            csv += std::to_string(result.grid[k]);
            csv += prefix;
            csv += format_real(s.mean_regret[k]);
            csv += ',';
            csv += format_real(s.stderr_regret[k]);
            csv += ',';
            csv += reps;
            csv += '\n';
        }
    }
    return csv;
}

std::string summary_json(const AggregateResult& result, const ExperimentConfig& config)
{
    using nlohmann::json;
    json cfg = {
        {"arms", config.arms},
        {"horizon", config.horizon},
        {"epsilons", config.epsilons},
        {"replications", config.replications},
        {"reward_kind", to_string(config.reward_kind)},
        {"mean_generation", to_string(config.mean_generation)},
        {"shuffle_arms", config.shuffle_arms},
        {"root_seed", config.root_seed},
        {"stride", effective_stride(config)},
        {"output_dir", config.output_dir.string()},
        {"plot", config.plot},
    };
    json algorithms = json::array();
    for (Algorithm a : config.algorithms)
        algorithms.push_back(to_string(a));
    cfg["algorithms"] = algorithms;
    if (config.mean_generation == MeanGeneration::Explicit)
        cfg["means"] = config.explicit_means;
    if (config.mean_generation == MeanGeneration::Hard)
        cfg["hard_best"] = config.hard_best;

    json series = json::array();
    for (const auto& s : result.series) {
        series.push_back({
            {"algorithm", to_string(s.algorithm)},
            {"epsilon", s.epsilon},
            {"final_regret_mean", s.mean_regret.back()},
            {"final_regret_stderr", s.stderr_regret.back()},
            {"mean_overhead_rounds", s.mean_overhead_rounds},
        });
    }
    json doc = {
        {"config", cfg},
        {"results", series},
        {"runtime_seconds", result.runtime_seconds},
    };
    return doc.dump(2) + "\n";
}

std::string regret_svg(const AggregateResult& result)
{
    // One panel per epsilon, one polyline per algorithm within it.
    std::vector<double> epsilons;
    for (const auto& s : result.series)
        if (std::find(epsilons.begin(), epsilons.end(), s.epsilon) == epsilons.end())
            epsilons.push_back(s.epsilon);

    constexpr double panel_w = 360, panel_h = 280, margin = 50;
    static constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    const double width = margin + static_cast<double>(epsilons.size()) * (panel_w + margin);
    const double height = panel_h + 2 * margin + 30;
    const double t_max = result.grid.empty() ? 1.0 : static_cast<double>(result.grid.back());

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (std::size_t p = 0; p < epsilons.size(); ++p) {
        const double x0 = margin + static_cast<double>(p) * (panel_w + margin);
        const double y0 = margin;
        double r_max = 0.0;
        for (const auto& s : result.series)
            if (s.epsilon == epsilons[p])
                for (double v : s.mean_regret)
                    r_max = std::max(r_max, v);
        if (r_max <= 0.0)
            r_max = 1.0;

        svg << "<g>\n<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << panel_w << "\" height=\"" << panel_h
            << "\" fill=\"none\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << x0 + panel_w / 2 << "\" y=\"" << y0 - 10 << "\" text-anchor=\"middle\">epsilon = "
            << format_real(epsilons[p]) << "</text>\n";
        svg << "<text x=\"" << x0 + panel_w / 2 << "\" y=\"" << y0 + panel_h + 20
            << "\" text-anchor=\"middle\">round t (max " << static_cast<Round>(t_max) << ")</text>\n";
        svg << "<text x=\"" << x0 + 4 << "\" y=\"" << y0 + 14 << "\">max regret " << r_max << "</text>\n";

        std::size_t colour = 0;
        for (const auto& s : result.series) {
            if (s.epsilon != epsilons[p])
                continue;
            svg << "<polyline fill=\"none\" stroke=\"" << palette[colour % std::size(palette)]
                << "\" stroke-width=\"1.5\" data-algorithm=\"" << to_string(s.algorithm) << "\" data-epsilon=\""
                << format_real(s.epsilon) << "\" points=\"";
            for (std::size_t k = 0; k < result.grid.size(); ++k) {
                const double x = x0 + panel_w * static_cast<double>(result.grid[k]) / t_max;
                const double y = y0 + panel_h - panel_h * s.mean_regret[k] / r_max;
                svg << (k ? " " : "") << x << "," << y;
            }
            svg << "\"/>\n";
            svg << "<text x=\"" << x0 + 8 << "\" y=\"" << y0 + 32 + 14 * static_cast<double>(colour) << "\" fill=\""
                << palette[colour % std::size(palette)] << "\">" << to_string(s.algorithm) << "</text>\n";
            ++colour;
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

OutputPaths emit_outputs(const AggregateResult& result, const ExperimentConfig& config)
{
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + config.output_dir.string() + ": " + ec.message());

    OutputPaths paths{config.output_dir / "regret_curves.csv", config.output_dir / "summary.json", {}};
    write_file(paths.csv, curves_csv(result));
    write_file(paths.json, summary_json(result, config));
    if (config.plot) {
        paths.svg = config.output_dir / "regret.svg";
        write_file(paths.svg, regret_svg(result));
    }
    return paths;
}

} // namespace erasure_bandit
