#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "swe/errors.hpp"
#include "swe/executor.hpp"
#include "swe/io.hpp"
#include "swe/scenarios.hpp"
#include "swe/timestep.hpp"

namespace swe {

/// Outcome of a full integration, as structured text and machine fields.
struct RunReport {
    std::string scenario;
    std::string executor;
    std::size_t cells = 0;
    unsigned long long steps = 0;
    double t_final = 0.0;
    double wall_seconds = 0.0;
    StepTimings timings;
    StepAccounting accounting;
    int snapshots_written = 0;
    std::vector<std::string> snapshot_paths;
    int boundary_clamp_warnings = 0;

    double cells_per_second() const {
        if (wall_seconds <= 0.0 || steps == 0) return 0.0;
        return static_cast<double>(cells) * static_cast<double>(steps) / wall_seconds;
    }

    /// key: value lines, one per field.
    std::string to_text() const {
        std::ostringstream os;
        os << "scenario: " << scenario << "\n";
        os << "executor: " << executor << "\n";
        os << "cells: " << cells << "\n";
        os << "steps: " << steps << "\n";
        os << "t_final: " << io_detail::fmt_double_short(t_final) << "\n";
        os << "wall_seconds: " << io_detail::fmt_double_short(wall_seconds) << "\n";
        os << "cells_per_second: " << io_detail::fmt_double_short(cells_per_second()) << "\n";
        for (int k = 0; k < 6; ++k) {
            os << kernel_name(static_cast<Kernel>(k))
               << "_seconds: " << io_detail::fmt_double_short(timings.kernel_seconds[static_cast<std::size_t>(k)])
               << "\n";
        }
        os << "smooth_seconds: " << io_detail::fmt_double_short(timings.smooth_seconds) << "\n";
        os << "halo_exchange_seconds: " << io_detail::fmt_double_short(timings.exchange_seconds) << "\n";
        os << "halo_values_exchanged_per_step: " << accounting.halo_values_exchanged << "\n";
        os << "redundant_predictor_rows_per_step: " << accounting.redundant_star_rows << "\n";
        os << "redundant_corrector_rows_per_step: " << accounting.redundant_corrector_rows << "\n";
        os << "snapshots_written: " << snapshots_written << "\n";
        if (boundary_clamp_warnings > 0) {
            os << "warning: fixed-elevation boundary clamped ghost depth to h_min ("
               << boundary_clamp_warnings << " fills)\n";
        }
        return os.str();
    }
};

struct RunResult {
    FieldSet final_state;
    RunReport report;
    double dt_next = 0.0;  ///< raw CFL dt from the final committed state
};

namespace run_detail {

inline std::string snapshot_name(const std::string& dir, const std::string& scenario, int ordinal,
                                 bool final) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%06d", ordinal);
    return dir + "/" + scenario + (final ? "_final" : std::string("_") + buf) + ".sws";
}

}  // namespace run_detail

/**
 * @brief Integrates a scenario from a given committed state to t_end.
 *
 * The loop computes the next dt (K6 of the previous step, or compute_dt for
 * the first one), clamps the final step so the state lands exactly on t_end,
 * and commits one step at a time. Snapshots are written when the committed
 * time crosses each snapshot_every mark, plus always at the end; each carries
 * the resume records (dt_next, step index).
 *
 * The step count and every committed state are independent of the executor
 * choice; only wall-clock fields differ.
 *
 * @param step_index0  sweep-parity origin; nonzero when resuming a run
 * @param dt_first     raw CFL dt to use for the first step (from a resume
 *                     record); NaN means compute it from the state
 */
inline RunResult run_from(const ScenarioConfig& sc, const FieldSet& start, bool write_outputs,
                          unsigned long long step_index0 = 0,
                          double dt_first = std::numeric_limits<double>::quiet_NaN()) {
    validate_scenario(sc);
    const GuardReport guard = stability_guard(start, sc.policy);
    if (!guard.pass) {
        throw InstabilityError("initial state: " + guard.describe(), guard.i, guard.j, guard.t);
    }

    RunResult out;
    out.report.scenario = sc.name;
    out.report.executor = sc.executor.name();
    out.report.cells = sc.grid.cell_count();

    if (write_outputs) {
        std::filesystem::create_directories(sc.out_dir);
    }

    Stepper stepper(sc.grid, sc.physics, sc.policy, sc.boundaries, sc.executor);
    stepper.load(start);

    const auto wall0 = detail::Clock::now();
    unsigned long long step_index = step_index0;
    double t = start.t;
    double dt_raw = std::isfinite(dt_first)
                        ? dt_first
                        : (t < sc.t_end
                               ? compute_dt(start, sc.policy, sc.physics,
                                            std::numeric_limits<double>::infinity())
                               : 0.0);
    double next_mark = sc.snapshot_every > 0.0
                           ? (std::floor(t / sc.snapshot_every) + 1.0) * sc.snapshot_every
                           : std::numeric_limits<double>::infinity();

    auto write_snap = [&](double dt_next, bool final) {
        if (!write_outputs) return;
        SnapshotExtras extras;
        extras.has_dt_next = true;
        extras.dt_next = dt_next;
        extras.has_step_index = true;
        extras.step_index = step_index;
        const std::string path = run_detail::snapshot_name(
            sc.out_dir, sc.name, out.report.snapshots_written, final);
        write_snapshot_file(stepper.state(), path, sc.physics.g, &extras);
        out.report.snapshot_paths.push_back(path);
        ++out.report.snapshots_written;
    };

    while (t < sc.t_end) {
        const double remaining = sc.t_end - t;
        const bool landing = dt_raw >= remaining;
        const double dt = landing ? remaining : dt_raw;
        const double t_after = landing ? sc.t_end : t + dt;
        const StepResult r = stepper.step(dt, step_index, t_after);
        ++step_index;
        ++out.report.steps;
        t = stepper.time();
        dt_raw = r.dt_next;
        if (sc.snapshot_every > 0.0 && t >= next_mark && t < sc.t_end) {
            write_snap(r.dt_next, false);
            next_mark = (std::floor(t / sc.snapshot_every) + 1.0) * sc.snapshot_every;
        }
    }

    out.report.t_final = t;
    out.report.wall_seconds = detail::seconds_since(wall0);
    out.report.timings = stepper.timings();
    out.report.accounting = stepper.accounting();
    out.report.boundary_clamp_warnings = stepper.guard_warnings();
    out.dt_next = dt_raw;
    write_snap(dt_raw, true);
    out.final_state = stepper.state();

    if (write_outputs) {
        std::ofstream rep(sc.out_dir + "/" + sc.name + "_report.txt");
        rep << out.report.to_text();
    }
    return out;
}

/// Integrates a scenario from its generated initial state.
inline RunResult run(const ScenarioConfig& sc, bool write_outputs = true) {
    return run_from(sc, build_initial_state(sc), write_outputs);
}

}  // namespace swe
