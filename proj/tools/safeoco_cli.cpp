#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "safeoco/sweep.hpp"

namespace {

// Seed lists accept both "0,1,2" and the range form "0..9".
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dots = item.find("..");
        if (dots != std::string::npos) {
            const std::uint64_t lo = std::stoull(item.substr(0, dots));
            const std::uint64_t hi = std::stoull(item.substr(dots + 2));
            for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
        } else if (!item.empty()) {
            seeds.push_back(std::stoull(item));
        }
    }
    return seeds;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Safe online convex optimization benchmark harness"};

    std::string setting = "linear";
    std::string algos = "mp-rogd";
    std::string horizons = "100,1000,10000";
    std::string seeds = "0..9";
    std::string schedule = "experiment";
    int dim = 2;
    bool audit = false;
    bool zero_cost = false;
    bool stable_timing = false;
    bool prefix_checkpoints = false;
    std::string out_path = "results.csv";
    std::string plot_path;
    std::string traces_dir;
    int workers = 0;

    app.add_option("--setting", setting, "Experiment setting")
        ->check(CLI::IsMember({"linear", "quadratic"}));
    app.add_option("--algos", algos, "Comma-separated algorithms: mp-rogd,mp-ogd,rogd");
    app.add_option("--horizons", horizons, "Comma-separated horizons");
    app.add_option("--seeds", seeds, "Seeds: comma list or range lo..hi");
    app.add_option("--schedule", schedule, "Parameter schedule")
        ->check(CLI::IsMember({"theorem", "experiment"}));
    app.add_option("--dim", dim, "Problem dimension");
    app.add_flag("--audit", audit, "Run the trace audits on every run");
    app.add_option("--out", out_path, "CSV output path");
    app.add_option("--plot", plot_path, "SVG regret-curve output path");
    app.add_option("--save-traces", traces_dir, "Directory for per-run trace JSON");
    app.add_flag("--zero-cost", zero_cost, "Test override: all cost oracles return 0");
    app.add_flag("--stable-timing", stable_timing,
                 "Write wall_ms as 0 so repeated sweeps are byte-identical");
    app.add_flag("--prefix-checkpoints", prefix_checkpoints,
                 "One long run per (algo, seed); horizon rows from prefixes");
    app.add_option("--workers", workers, "Worker threads (0 = hardware)");
    CLI11_PARSE(app, argc, argv);

    safeoco::SweepConfig config;
    config.setting = setting == "linear" ? safeoco::Setting::Linear
                                         : safeoco::Setting::Quadratic;
    config.schedule = schedule == "theorem" ? safeoco::Schedule::Theorem
                                            : safeoco::Schedule::Experiment;
    config.dim = dim;
    config.audit = audit;
    config.zero_cost = zero_cost;
    config.stable_timing = stable_timing;
    config.prefix_checkpoints = prefix_checkpoints;
    config.save_traces_dir = traces_dir;
    config.workers = workers;

    config.algorithms.clear();
    {
        std::stringstream ss(algos);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) config.algorithms.push_back(item);
    }
    config.horizons.clear();
    {
        std::stringstream ss(horizons);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) config.horizons.push_back(std::stol(item));
    }
    config.seeds = parse_seeds(seeds);

    try {
        if (!traces_dir.empty()) std::filesystem::create_directories(traces_dir);
        const safeoco::SweepResult result = safeoco::run_sweep(config);
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot open " << out_path << "\n";
            return 1;
        }
        out << result.csv;
        out.close();
        std::cout << "wrote " << out_path << " (" << result.rows.size() << " runs)\n";

        int failures = 0;
        for (const auto& row : result.rows) {
            if (!row.error.empty()) {
                std::cerr << "run failed: " << row.algo << " seed=" << row.seed
                          << " T=" << row.horizon << ": " << row.error << "\n";
                ++failures;
            }
        }
        if (audit) {
            for (std::size_t i = 0; i < result.rows.size(); ++i) {
                for (const auto& check : result.reports[i].checks) {
                    if (!check.pass && !check.informational) {
                        std::cerr << "audit fail: " << result.rows[i].algo
                                  << " seed=" << result.rows[i].seed
                                  << " T=" << result.rows[i].horizon << " check="
                                  << check.name << " round=" << check.failing_round
                                  << "\n";
                    }
                }
            }
        }
        if (!plot_path.empty()) {
            safeoco::emit_plot_file(out_path, plot_path);
            std::cout << "wrote " << plot_path << "\n";
        }
        return failures == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
