#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "swe/errors.hpp"
#include "swe/executor.hpp"
#include "swe/grid.hpp"
#include "swe/scheme.hpp"
#include "swe/timestep.hpp"

namespace swe {

/// Declarative initial condition. Positions and radii are in cell units
/// (fractional allowed); depths and amplitudes in meters.
struct InitialCondition {
    enum class Kind { flat_pool, drops, channel_slope, vortex, dam_break };

    struct Drop {
        double cx = 0.0;
        double cy = 0.0;
        double radius = 1.0;
        double amplitude = 0.0;

        bool operator==(const Drop&) const = default;
    };

    Kind kind = Kind::flat_pool;
    double depth = 1.0;          ///< base pool depth [m]
    std::vector<Drop> drops;     ///< kind == drops
    double slope = 0.0;          ///< kind == channel_slope: bed gradient, down toward +x
    double center_x = 0.0;       ///< kind == vortex [cells]
    double center_y = 0.0;
    double v_peak = 0.0;         ///< kind == vortex: peak tangential speed [m/s]
    double core_radius = 1.0;    ///< kind == vortex [cells]
    double split_x = 0.0;        ///< kind == dam_break: dam position [m]
    double h_left = 1.0;         ///< kind == dam_break
    double h_right = 1.0;

    bool operator==(const InitialCondition&) const = default;
};

inline const char* initial_kind_name(InitialCondition::Kind k) {
    switch (k) {
        case InitialCondition::Kind::flat_pool: return "flat_pool";
        case InitialCondition::Kind::drops: return "drops";
        case InitialCondition::Kind::channel_slope: return "channel_slope";
        case InitialCondition::Kind::vortex: return "vortex";
        case InitialCondition::Kind::dam_break: return "dam_break";
    }
    return "?";
}

/// Everything needed to run a simulation, declaratively.
struct ScenarioConfig {
    std::string name = "unnamed";
    GridSpec grid{65, 65, 1.0, 1.0};
    PhysicsParams physics;
    StabilityPolicy policy;
    ExecutorKind executor;
    BoundarySet boundaries = BoundarySet::all(BoundaryKind::wall());
    double t_end = 1.0;
    double snapshot_every = 0.0;  ///< seconds; 0 = final snapshot only
    InitialCondition initial;
    std::string out_dir = "out";

    bool operator==(const ScenarioConfig&) const = default;
};

inline void validate_scenario(const ScenarioConfig& sc) {
    validate_physics(sc.physics);
    validate_policy(sc.policy);
    validate_executor(sc.executor);
    if (!(sc.t_end >= 0.0) || !std::isfinite(sc.t_end)) {
        throw ConfigError("scenario: t_end must be >= 0 and finite");
    }
    if (!(sc.snapshot_every >= 0.0)) {
        throw ConfigError("scenario: snapshot_every must be >= 0");
    }
    validate_boundary(sc.boundaries.north, sc.policy.h_min, "north");
    validate_boundary(sc.boundaries.south, sc.policy.h_min, "south");
    validate_boundary(sc.boundaries.east, sc.policy.h_min, "east");
    validate_boundary(sc.boundaries.west, sc.policy.h_min, "west");
}

/**
 * @brief Materializes the initial FieldSet described by a scenario.
 *
 * Deterministic: the same config yields a bit-identical state. Drop
 * contributions at each cell are summed in value-sorted order, so a
 * mirror-symmetric drop layout produces a bit-exactly symmetric field.
 */
inline FieldSet build_initial_state(const ScenarioConfig& sc) {
    validate_scenario(sc);
    const GridSpec& g = sc.grid;
    FieldSet fs(g);
    const InitialCondition& ic = sc.initial;

    switch (ic.kind) {
        case InitialCondition::Kind::flat_pool: {
            std::fill(fs.h.begin(), fs.h.end(), ic.depth);
            break;
        }
        case InitialCondition::Kind::drops: {
            std::vector<double> contrib(ic.drops.size());
            for (int j = 0; j < g.ny; ++j) {
                for (int i = 0; i < g.nx; ++i) {
                    for (std::size_t k = 0; k < ic.drops.size(); ++k) {
                        const InitialCondition::Drop& dr = ic.drops[k];
                        const double di = i - dr.cx;
                        const double dj = j - dr.cy;
                        contrib[k] = dr.amplitude *
                                     std::exp(-(di * di + dj * dj) / (dr.radius * dr.radius));
                    }
                    std::sort(contrib.begin(), contrib.end());
                    double bump = 0.0;
                    for (double c : contrib) bump += c;
                    fs.h[fs.idx(i, j)] = ic.depth + bump;
                }
            }
            break;
        }
        case InitialCondition::Kind::channel_slope: {
            // Bed descends toward +x and reaches zero at the east column;
            // the water starts at rest with a level surface at `depth`, so
            // the initial depth shrinks toward the high west end.
            for (int j = 0; j < g.ny; ++j) {
                for (int i = 0; i < g.nx; ++i) {
                    const double z = ic.slope * g.dx * static_cast<double>(g.nx - 1 - i);
                    fs.z[fs.idx(i, j)] = z;
                    fs.h[fs.idx(i, j)] = ic.depth - z;
                }
            }
            break;
        }
        case InitialCondition::Kind::vortex: {
            // Tangential speed v_t(r) = v_peak (r/rc) exp((1 - (r/rc)^2)/2),
            // written without the r division so the center is regular.
            for (int j = 0; j < g.ny; ++j) {
                for (int i = 0; i < g.nx; ++i) {
                    const double di = i - ic.center_x;
                    const double dj = j - ic.center_y;
                    const double r2 = (di * di + dj * dj) / (ic.core_radius * ic.core_radius);
                    const double shape = ic.v_peak * std::exp(0.5 * (1.0 - r2)) / ic.core_radius;
                    const std::size_t k = fs.idx(i, j);
                    fs.h[k] = ic.depth;
                    fs.qx[k] = ic.depth * (-shape * dj);
                    fs.qy[k] = ic.depth * (shape * di);
                }
            }
            break;
        }
        case InitialCondition::Kind::dam_break: {
            for (int j = 0; j < g.ny; ++j) {
                for (int i = 0; i < g.nx; ++i) {
                    const double x = (i + 0.5) * g.dx;
                    fs.h[fs.idx(i, j)] = (x < ic.split_x) ? ic.h_left : ic.h_right;
                }
            }
            break;
        }
    }

    const GuardReport guard = stability_guard(fs, sc.policy);
    if (!guard.pass) {
        throw ConfigError("initial state fails the stability guard: " + guard.describe());
    }
    return fs;
}

namespace detail {

/// Per-axis Courant number kept safely inside the unsplit 2D MacCormack
/// stability region (the x- and y-Courant numbers add).
inline constexpr double scenario_cfl = 0.45;

inline StabilityPolicy scenario_policy() {
    StabilityPolicy pol;
    pol.cfl = scenario_cfl;
    return pol;
}

}  // namespace detail

/**
 * Five Gaussian surface bumps (center plus four on the diagonals) on a
 * 1 m still pool in a closed box. n = 201 reproduces the 40401-cell
 * dataset, n = 1024 (big) the 1,048,576-cell one; both run to t = 100 s.
 */
inline ScenarioConfig gen_five_drops(int n = 0, bool big = false) {
    if (n <= 0) n = big ? 1024 : 201;
    if (n < 33) {
        throw ConfigError("gen_five_drops: n must be at least 33");
    }
    ScenarioConfig sc;
    sc.name = big || n == 1024 ? "five-drops-big" : "five-drops";
    sc.grid = GridSpec(n, n, 1.0, 1.0);
    sc.policy = detail::scenario_policy();
    sc.boundaries = BoundarySet::all(BoundaryKind::wall());
    sc.t_end = 100.0;
    sc.initial.kind = InitialCondition::Kind::drops;
    sc.initial.depth = 1.0;
    const double c = (n - 1) / 2.0;
    const double d = n / 4.0;
    const double r0 = n / 20.0;
    sc.initial.drops = {
        {c, c, r0, 0.3},         {c - d, c - d, r0, 0.3}, {c - d, c + d, r0, 0.3},
        {c + d, c - d, r0, 0.3}, {c + d, c + d, r0, 0.3},
    };
    return sc;
}

/// Constant discharge entering a closed 1 m pool across the west edge;
/// t_end = 1000 s.
inline ScenarioConfig gen_inlet_flood(int n = 201) {
    if (n < 33) {
        throw ConfigError("gen_inlet_flood: n must be at least 33");
    }
    ScenarioConfig sc;
    sc.name = "inlet-flood";
    sc.grid = GridSpec(n, n, 1.0, 1.0);
    sc.policy = detail::scenario_policy();
    sc.boundaries = BoundarySet::all(BoundaryKind::wall());
    sc.boundaries.west = BoundaryKind::inflow(0.1, 1.0);
    sc.t_end = 1000.0;
    sc.initial.kind = InitialCondition::Kind::flat_pool;
    sc.initial.depth = 1.0;
    return sc;
}

/// Sloped channel: inflow at the high west end, fixed surface elevation at
/// the east outlet, walls north/south; t_end = 1000 s. The bed drops half
/// the base depth across the domain (scale-free, always wet) and a modest
/// Manning roughness damps the start-up seiche so the discharge settles.
inline ScenarioConfig gen_channel_flood(int n = 1024) {
    if (n < 33) {
        throw ConfigError("gen_channel_flood: n must be at least 33");
    }
    ScenarioConfig sc;
    sc.name = "channel-flood";
    sc.grid = GridSpec(n, n, 1.0, 1.0);
    sc.policy = detail::scenario_policy();
    sc.physics.manning_n = 0.035;
    sc.initial.kind = InitialCondition::Kind::channel_slope;
    sc.initial.depth = 1.0;
    sc.initial.slope = 0.5 * sc.initial.depth / ((n - 1) * sc.grid.dx);
    sc.boundaries = BoundarySet::all(BoundaryKind::wall());
    sc.boundaries.west = BoundaryKind::inflow(0.1, 1.0);
    // Bed elevation is zero at the east column; the outlet holds the
    // surface at the initial level.
    sc.boundaries.east = BoundaryKind::fixed_eta(1.0);
    sc.t_end = 1000.0;
    return sc;
}

/// A single smooth vortex spinning in a deep closed pool; t_end = 1000 s.
inline ScenarioConfig gen_vortex(int n = 1024) {
    if (n < 33) {
        throw ConfigError("gen_vortex: n must be at least 33");
    }
    ScenarioConfig sc;
    sc.name = "vortex";
    sc.grid = GridSpec(n, n, 1.0, 1.0);
    sc.policy = detail::scenario_policy();
    sc.boundaries = BoundarySet::all(BoundaryKind::wall());
    sc.t_end = 1000.0;
    sc.initial.kind = InitialCondition::Kind::vortex;
    sc.initial.depth = 2.0;
    sc.initial.center_x = (n - 1) / 2.0;
    sc.initial.center_y = (n - 1) / 2.0;
    sc.initial.v_peak = 0.5;
    sc.initial.core_radius = n / 8.0;
    return sc;
}

/**
 * Classical wet-bed dam break in a thin channel (3 rows, transmissive
 * north/south so the flow stays one-dimensional), used for comparison
 * against the analytic solution. The end time is chosen so the waves span
 * about half the channel. The diffusion coefficient is the one tuned value
 * used by the accuracy validation; it is frozen here.
 */
inline ScenarioConfig gen_dam_break(int n = 400, double h_l = 1.0, double h_r = 0.5) {
    if (n < 33) {
        throw ConfigError("gen_dam_break: n must be at least 33");
    }
    if (!(h_l >= h_r) || !(h_r > 0.0)) {
        throw ConfigError("gen_dam_break: requires h_left >= h_right > 0");
    }
    ScenarioConfig sc;
    sc.name = "dam-break";
    sc.grid = GridSpec(n, 3, 1.0, 1.0);
    sc.policy = detail::scenario_policy();
    sc.physics.nu_art = 0.05;
    sc.boundaries = BoundarySet::all(BoundaryKind::wall());
    sc.boundaries.north = BoundaryKind::transmissive();
    sc.boundaries.south = BoundaryKind::transmissive();
    sc.initial.kind = InitialCondition::Kind::dam_break;
    sc.initial.split_x = 0.5 * n * sc.grid.dx;
    sc.initial.h_left = h_l;
    sc.initial.h_right = h_r;
    sc.t_end = 0.25 * n * sc.grid.dx / std::sqrt(sc.physics.g * h_l);
    return sc;
}

/// Scenario presets by CLI name; n = 0 keeps each preset's default size.
inline ScenarioConfig scenario_by_name(const std::string& name, int n = 0) {
    if (name == "five-drops") return gen_five_drops(n, false);
    if (name == "five-drops-big") return gen_five_drops(n, true);
    if (name == "inlet-flood") return n > 0 ? gen_inlet_flood(n) : gen_inlet_flood();
    if (name == "channel-flood") return n > 0 ? gen_channel_flood(n) : gen_channel_flood();
    if (name == "vortex") return n > 0 ? gen_vortex(n) : gen_vortex();
    if (name == "dam-break") return n > 0 ? gen_dam_break(n) : gen_dam_break();
    if (name == "still-water") {
        ScenarioConfig sc;
        sc.name = "still-water";
        sc.grid = n > 0 ? GridSpec(n, n, 1.0, 1.0) : GridSpec(65, 65, 1.0, 1.0);
        sc.policy = detail::scenario_policy();
        sc.t_end = 10.0;
        sc.initial.kind = InitialCondition::Kind::flat_pool;
        sc.initial.depth = 1.0;
        return sc;
    }
    throw ConfigError("unknown scenario '" + name +
                      "' (known: five-drops, five-drops-big, inlet-flood, channel-flood, "
                      "vortex, dam-break, still-water)");
}

}  // namespace swe
