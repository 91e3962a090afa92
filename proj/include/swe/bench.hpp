#pragma once

#include <algorithm>
#include <chrono>
#include <sstream>
#include <string>
#include <vector>

#include "swe/executor.hpp"
#include "swe/io.hpp"
#include "swe/scenarios.hpp"
#include "swe/timestep.hpp"

namespace swe {

/// One benchmark measurement: median seconds per step over the repetitions
/// (warm-up step excluded) and the derived throughput.
struct BenchRow {
    int n = 0;
    std::string executor;
    int steps = 0;
    int reps = 0;
    double median_sec_per_step = 0.0;
    double cells_per_second = 0.0;
};

/**
 * Times `steps` Five Drops steps per (size, executor) pair, `reps` times,
 * after one untimed warm-up step. Timing never touches the numerics: the
 * committed states are the ones any plain run produces, which `finals`
 * exposes for the bench-integrity check.
 */
inline std::vector<BenchRow> run_bench(const std::vector<int>& sizes, int steps,
                                       const std::vector<ExecutorKind>& executors, int reps,
                                       std::vector<FieldSet>* finals = nullptr) {
    if (steps < 1 || reps < 1) {
        throw ConfigError("bench: steps and reps must be >= 1");
    }
    for (int n : sizes) {
        if (n < 33) {
            throw ConfigError("bench: sizes must be >= 33");
        }
    }
    std::vector<BenchRow> rows;
    for (int n : sizes) {
        const ScenarioConfig sc = gen_five_drops(n);
        const FieldSet ic = build_initial_state(sc);
        for (const ExecutorKind& kind : executors) {
            std::vector<double> per_step;
            FieldSet last;
            for (int rep = 0; rep < reps; ++rep) {
                Stepper st(sc.grid, sc.physics, sc.policy, sc.boundaries, kind);
                st.load(ic);
                double dt = compute_dt(ic, sc.policy, sc.physics,
                                       std::numeric_limits<double>::infinity());
                dt = st.step(dt, 0).dt_next;  // warm-up, excluded
                const auto t0 = detail::Clock::now();
                for (int k = 1; k <= steps; ++k) {
                    dt = st.step(dt, static_cast<unsigned long long>(k)).dt_next;
                }
                per_step.push_back(detail::seconds_since(t0) / steps);
                if (rep == reps - 1 && finals != nullptr) {
                    last = st.state();
                }
            }
            std::sort(per_step.begin(), per_step.end());
            const double median = per_step[per_step.size() / 2];
            BenchRow row;
            row.n = n;
            row.executor = kind.name();
            row.steps = steps;
            row.reps = reps;
            row.median_sec_per_step = median;
            row.cells_per_second = static_cast<double>(sc.grid.cell_count()) / median;
            rows.push_back(row);
            if (finals != nullptr) {
                finals->push_back(std::move(last));
            }
        }
    }
    return rows;
}

inline std::string bench_table(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    char line[160];
    std::snprintf(line, sizeof line, "%8s  %-20s %8s %6s  %14s  %14s\n", "size", "executor",
                  "steps", "reps", "sec/step", "cells/s");
    os << line;
    for (const BenchRow& r : rows) {
        std::snprintf(line, sizeof line, "%4dx%-4d %-20s %8d %6d  %14.6e  %14.6e\n", r.n, r.n,
                      r.executor.c_str(), r.steps, r.reps, r.median_sec_per_step,
                      r.cells_per_second);
        os << line;
    }
    return os.str();
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os << "size,executor,steps,reps,median_sec_per_step,cells_per_second\n";
    for (const BenchRow& r : rows) {
        os << r.n << ',' << r.executor << ',' << r.steps << ',' << r.reps << ','
           << io_detail::fmt_double(r.median_sec_per_step) << ','
           << io_detail::fmt_double(r.cells_per_second) << '\n';
    }
    return os.str();
}

}  // namespace swe
