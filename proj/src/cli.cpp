#include "ocsim/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "ocsim/config.hpp"
#include "ocsim/engine.hpp"
#include "ocsim/errors.hpp"
#include "ocsim/experiment.hpp"

namespace ocsim {

namespace {

struct CommonFlags {
    std::string config_path;
    std::string policy;
    std::optional<std::uint32_t> db_size;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "Config file (sectioned key=value)");
    cmd->add_option("--policy", f.policy, "Policy override: null|cactis|orion|ck");
    cmd->add_option("--db-size", f.db_size, "Initial database size override (objects)");
    cmd->add_option("--seed", f.seed, "Seed override");
    cmd->add_option("--out", f.out_dir, "Output directory override");
}

SimConfig build_config(const CommonFlags& f, bool for_sweep) {
    SimConfig cfg = f.config_path.empty() ? SimConfig{} : load_config(f.config_path);
    if (!f.policy.empty()) {
        cfg.policy.name = f.policy;
        if (for_sweep) cfg.experiment.policies = {f.policy};
    }
    if (f.db_size) {
        cfg.database.initial_objects = *f.db_size;
        if (for_sweep) cfg.experiment.db_sizes = {*f.db_size};
    }
    if (f.seed) {
        cfg.engine.seed = *f.seed;
        cfg.experiment.base_seed = *f.seed;
    }
    if (!f.out_dir.empty()) cfg.experiment.out_dir = f.out_dir;
    cfg.validate();
    return cfg;
}

int do_run(const CommonFlags& f) {
    SimConfig cfg = build_config(f, false);
    RunMetrics m = simulate_once(cfg, cfg.engine.seed);
    std::vector<ResultRow> rows{make_row(cfg.policy.name, cfg.database.initial_objects,
                                         cfg.engine.seed, m)};
    std::cout << render_csv(rows);
    return 0;
}

int do_sweep(const CommonFlags& f) {
    SimConfig cfg = build_config(f, true);
    auto cells = run_experiment(cfg);
    std::vector<ResultRow> rows;
    rows.reserve(cells.size());
    for (const auto& c : cells) rows.push_back(c.row);
    std::filesystem::path out(cfg.experiment.out_dir);
    emit_csv(rows, (out / "results.csv").string());
    emit_plots(rows, out.string());
    std::cout << "wrote " << (out / "results.csv").string() << " (" << rows.size()
              << " rows) and 4 charts: response_time.svg txn_ios.svg clust_ios.svg "
                 "pages_used.svg\n";
    return 0;
}

int do_validate(const CommonFlags& f) {
    SimConfig cfg = build_config(f, false);
    std::cout << dump_config(cfg);
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Object clustering policy simulator for an object-oriented "
                 "database engine"};
    app.require_subcommand(1);

    CommonFlags run_flags, sweep_flags, validate_flags;
    CLI::App* run_cmd =
        app.add_subcommand("run", "Run one simulation and print its result row");
    add_common(run_cmd, run_flags);
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "Run the size x policy sweep, write CSV and charts");
    add_common(sweep_cmd, sweep_flags);
    CLI::App* validate_cmd = app.add_subcommand(
        "validate", "Check the configuration and print the effective values");
    add_common(validate_cmd, validate_flags);

    try {
        app.parse(argc, argv);
        if (run_cmd->parsed()) return do_run(run_flags);
        if (sweep_cmd->parsed()) return do_sweep(sweep_flags);
        return do_validate(validate_flags);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const SimError& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace ocsim
