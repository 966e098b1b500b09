#include <cstdio>
#include <functional>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "sensorctl/errors.hpp"
#include "sensorctl/experiments.hpp"
#include "sensorctl/version.hpp"

namespace {

using sensorctl::HarnessConfig;
using sensorctl::ResultTable;

struct Options {
    std::string config_path;
    std::string out_dir;
    long long seed = -1;
    long long trials = -1;
};

HarnessConfig effective_config(const Options& opt) {
    HarnessConfig cfg;
    if (!opt.config_path.empty()) cfg = sensorctl::load_config_file(opt.config_path);
    if (opt.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opt.seed);
    if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
    if (opt.trials > 0) {
        cfg.table1.trials = opt.trials;
        cfg.table2.trials = opt.trials;
        cfg.table3.trials = opt.trials;
        cfg.game.trials = opt.trials;
        cfg.planner.trials = opt.trials;
    }
    return cfg;
}

void emit(const ResultTable& table, const HarnessConfig& cfg) {
    const std::string path = table.write_csv(cfg.out_dir);
    std::printf("%s: %zu rows -> %s\n", table.name.c_str(), table.rows.size(), path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Estimation and sensor-control simulation harness"};
    app.set_version_flag("--version", std::string(sensorctl::kVersion));
    app.require_subcommand(1);

    Options opt;
    app.add_option("--config", opt.config_path, "Config document (JSON)");
    app.add_option("--seed", opt.seed, "Master seed override");
    app.add_option("--out", opt.out_dir, "Output directory for CSV files");
    app.add_option("--trials", opt.trials, "Trial count override");

    const std::map<std::string, std::function<ResultTable(const HarnessConfig&)>> runners = {
        {"table1", sensorctl::run_table1},
        {"table2", sensorctl::run_table2},
        {"table3", sensorctl::run_table3},
        {"fig2", sensorctl::run_fig2},
        {"fig3", sensorctl::run_fig3},
        {"game-threshold", sensorctl::run_game_threshold},
        {"planner-demo", sensorctl::run_planner_demo},
    };

    for (const auto& [name, fn] : runners) {
        auto* sub = app.add_subcommand(name, "Run the " + name + " experiment");
        sub->fallthrough();
        sub->callback([&opt, fn = fn] {
            const HarnessConfig cfg = effective_config(opt);
            emit(fn(cfg), cfg);
        });
    }
    auto* all = app.add_subcommand("all", "Run every experiment");
    all->fallthrough();
    all->callback([&opt, &runners] {
        const HarnessConfig cfg = effective_config(opt);
        for (const auto& [name, fn] : runners) emit(fn(cfg), cfg);
    });

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const sensorctl::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
