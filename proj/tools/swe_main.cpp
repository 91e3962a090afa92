// Command-line driver: run simulations, generate scenario files, validate
// against the oracles, and benchmark the executors.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swe/bench.hpp"
#include "swe/errors.hpp"
#include "swe/io.hpp"
#include "swe/run.hpp"
#include "swe/scenarios.hpp"
#include "swe/validate.hpp"

namespace {

using namespace swe;

const char* error_kind(const std::exception& e) {
    switch (exit_code_for(e)) {
        case ExitCode::config: return "config";
        case ExitCode::instability: return "instability";
        case ExitCode::step_collapse: return "step-collapse";
        case ExitCode::io: return "io";
        default: return "error";
    }
}

ExecutorKind parse_executor_flag(const std::string& s) {
    std::vector<std::string> parts;
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.empty()) throw ConfigError("--executor: empty value");
    if (parts[0] == "naive") {
        if (parts.size() > 1) throw ConfigError("--executor naive takes no parameter");
        return ExecutorKind::naive();
    }
    if (parts[0] == "tiled") {
        if (parts.size() > 2) throw ConfigError("--executor tiled takes at most one parameter");
        return ExecutorKind::tiled(parts.size() == 2 ? std::stoi(parts[1]) : 16);
    }
    if (parts[0] == "decomposed") {
        if (parts.size() < 2) throw ConfigError("--executor decomposed needs a worker count");
        ExecutorKind k = ExecutorKind::decomposed(std::stoi(parts[1]));
        if (parts.size() >= 3) {
            if (parts[2] == "tiled") k.inner = ExecutorKind::Inner::tiled;
            else if (parts[2] != "naive") throw ConfigError("--executor inner must be naive|tiled");
        }
        if (parts.size() > 3) throw ConfigError("--executor: too many parameters");
        return k;
    }
    throw ConfigError("--executor: unknown strategy '" + parts[0] + "'");
}

/// SWE_WORKERS caps the decomposed worker count.
void apply_worker_cap(ExecutorKind& kind) {
    const char* cap_str = std::getenv("SWE_WORKERS");
    if (cap_str == nullptr || kind.strategy != ExecutorKind::Strategy::decomposed) return;
    const int cap = std::atoi(cap_str);
    if (cap >= 1 && kind.workers > cap) {
        kind.workers = cap;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        throw IoError("cannot open config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides,
            const std::string& executor_flag, const std::string& out_dir, double snapshot_every,
            bool quiet) {
    ScenarioConfig sc = parse_config(read_file(config_path));
    for (const std::string& o : overrides) {
        apply_override(sc, o);
    }
    if (!executor_flag.empty()) {
        sc.executor = parse_executor_flag(executor_flag);
    }
    if (!out_dir.empty()) {
        sc.out_dir = out_dir;
    }
    if (snapshot_every >= 0.0) {
        sc.snapshot_every = snapshot_every;
    }
    apply_worker_cap(sc.executor);

    const RunResult r = run(sc, true);
    if (!quiet) {
        std::cout << r.report.to_text();
        std::cout << "final_snapshot: " << r.report.snapshot_paths.back() << "\n";
    }
    return 0;
}

int cmd_gen(const std::string& name, int n, const std::string& out_dir) {
    const ScenarioConfig base = scenario_by_name(name, n);
    ScenarioConfig sc = base;
    sc.out_dir = out_dir.empty() ? "scenarios/" + sc.name : out_dir;
    std::filesystem::create_directories(sc.out_dir);

    const std::string cfg_path = sc.out_dir + "/" + sc.name + ".cfg";
    std::ofstream cfg(cfg_path);
    cfg << emit_config(sc);
    cfg.close();

    const FieldSet ic = build_initial_state(sc);
    const std::string snap_path = sc.out_dir + "/" + sc.name + "_initial.sws";
    write_snapshot_file(ic, snap_path, sc.physics.g);

    std::cout << "config: " << cfg_path << "\n";
    std::cout << "initial_state: " << snap_path << "\n";
    std::cout << "cells: " << sc.grid.cell_count() << "\n";
    return 0;
}

int cmd_validate(const std::string& suite) {
    std::vector<CheckResult> results;
    if (suite == "all") {
        for (const std::string& name : validation_suite_names()) {
            std::cout << "suite " << name << ":\n";
            for (const CheckResult& r : run_validation_suite(name)) {
                std::cout << (r.pass ? "  [PASS] " : "  [FAIL] ") << r.name << " - " << r.detail
                          << "\n";
                results.push_back(r);
            }
        }
    } else {
        results = run_validation_suite(suite);
        for (const CheckResult& r : results) {
            std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " - " << r.detail << "\n";
        }
    }
    int failed = 0;
    for (const CheckResult& r : results) {
        if (!r.pass) ++failed;
    }
    std::cout << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) FAILED")
              << " (" << results.size() << " total)\n";
    return failed == 0 ? 0 : 1;
}

int cmd_bench(const std::string& sizes_str, int steps, const std::string& executors_str, int reps,
              const std::string& csv_path) {
    std::vector<int> sizes;
    {
        std::istringstream ss(sizes_str);
        std::string tok;
        while (std::getline(ss, tok, ',')) sizes.push_back(std::stoi(tok));
    }
    std::vector<ExecutorKind> executors;
    {
        std::istringstream ss(executors_str);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            ExecutorKind k = parse_executor_flag(tok);
            apply_worker_cap(k);
            executors.push_back(k);
        }
    }
    const std::vector<BenchRow> rows = run_bench(sizes, steps, executors, reps);
    std::cout << bench_table(rows);
    std::ofstream csv(csv_path);
    if (!csv) {
        throw IoError("cannot open '" + csv_path + "' for the bench CSV");
    }
    csv << bench_csv(rows);
    std::cout << "csv: " << csv_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2D shallow-water MacCormack solver with deterministic executors"};
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "integrate a scenario config to its end time");
    std::string config_path;
    std::vector<std::string> overrides;
    std::string executor_flag;
    std::string out_dir;
    double snapshot_every = -1.0;
    bool quiet = false;
    run_cmd->add_option("--config", config_path, "scenario config file")->required();
    run_cmd->add_option("--set", overrides, "override: section.key=value (repeatable)");
    run_cmd->add_option("--executor", executor_flag, "naive | tiled[:T] | decomposed:N[:inner]");
    run_cmd->add_option("--out", out_dir, "output directory (overrides config)");
    run_cmd->add_option("--snapshot-every", snapshot_every, "snapshot cadence in seconds");
    run_cmd->add_flag("--quiet", quiet, "suppress the report on stdout");

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "write a scenario config + initial snapshot");
    std::string scenario_name;
    int gen_n = 0;
    std::string gen_out;
    gen_cmd->add_option("name", scenario_name,
                        "five-drops | five-drops-big | inlet-flood | channel-flood | vortex | "
                        "dam-break | still-water")
        ->required();
    gen_cmd->add_option("--n", gen_n, "grid cells per side (0 = preset default)");
    gen_cmd->add_option("--out", gen_out, "output directory");

    // validate
    auto* val_cmd = app.add_subcommand("validate", "run the validation suites");
    std::string suite = "all";
    val_cmd->add_option("suite", suite, "suite name or 'all'");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "benchmark executors on five-drops grids");
    std::string sizes_str = "256,512";
    std::string executors_str = "naive,tiled:16";
    int steps = 50;
    int reps = 3;
    std::string csv_path = "bench.csv";
    bench_cmd->add_option("--sizes", sizes_str, "comma-separated grid sides");
    bench_cmd->add_option("--steps", steps, "timed steps per measurement");
    bench_cmd->add_option("--executors", executors_str, "comma-separated executor specs");
    bench_cmd->add_option("--reps", reps, "repetitions (median reported)");
    bench_cmd->add_option("--csv", csv_path, "machine-readable output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            return cmd_run(config_path, overrides, executor_flag, out_dir, snapshot_every, quiet);
        }
        if (gen_cmd->parsed()) {
            return cmd_gen(scenario_name, gen_n, gen_out);
        }
        if (val_cmd->parsed()) {
            return cmd_validate(suite);
        }
        if (bench_cmd->parsed()) {
            return cmd_bench(sizes_str, steps, executors_str, reps, csv_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "swe: error [" << error_kind(e) << "]: " << e.what() << "\n";
        return static_cast<int>(exit_code_for(e));
    }
    return 0;
}
