#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "swe/errors.hpp"
#include "swe/grid.hpp"
#include "swe/scheme.hpp"

namespace swe {

/// CFL constant and the guard thresholds that stand in for unsupported
/// dry-cell physics: runs abort cleanly instead of producing NaNs.
struct StabilityPolicy {
    double cfl = 0.9;                                       ///< Courant number in (0, 1]
    double dt_max = std::numeric_limits<double>::infinity();  ///< step ceiling [s]
    double dt_min = 1e-9;                                   ///< below this the run aborts [s]
    double h_min = default_h_min;                           ///< minimum legal depth [m]

    bool operator==(const StabilityPolicy&) const = default;
};

inline void validate_policy(const StabilityPolicy& pol) {
    if (!(pol.cfl > 0.0) || !(pol.cfl <= 1.0)) {
        throw ConfigError("policy: cfl must lie in (0, 1]");
    }
    if (!(pol.dt_min > 0.0)) {
        throw ConfigError("policy: dt_min must be > 0");
    }
    if (!(pol.dt_max >= pol.dt_min)) {
        throw ConfigError("policy: dt_max must be >= dt_min");
    }
    if (!(pol.h_min > 0.0)) {
        throw ConfigError("policy: h_min must be > 0");
    }
}

/// Result of the stability guard: either a pass, or the first offending
/// cell in row-major order with its values.
struct GuardReport {
    bool pass = true;
    int i = -1;
    int j = -1;
    double h = 0.0;
    double qx = 0.0;
    double qy = 0.0;
    double t = 0.0;

    std::string describe() const {
        if (pass) return "ok";
        return "cell (" + std::to_string(i) + ", " + std::to_string(j) + ") at t=" +
               std::to_string(t) + ": h=" + std::to_string(h) + " qx=" + std::to_string(qx) +
               " qy=" + std::to_string(qy);
    }
};

namespace detail {

/// Guard over rows [j_begin, j_end) of raw field arrays laid out per the
/// grid contract. Returns the first offender within the range.
inline GuardReport guard_rows(const double* h, const double* qx, const double* qy, int nx,
                              int j_begin, int j_end, double h_min, double t) {
    for (int j = j_begin; j < j_end; ++j) {
        const std::size_t row = static_cast<std::size_t>(j) * static_cast<std::size_t>(nx);
        for (int i = 0; i < nx; ++i) {
            const std::size_t k = row + static_cast<std::size_t>(i);
            const bool ok = std::isfinite(h[k]) && std::isfinite(qx[k]) &&
                            std::isfinite(qy[k]) && h[k] >= h_min;
            if (!ok) {
                return {false, i, j, h[k], qx[k], qy[k], t};
            }
        }
    }
    return {};
}

/// Minimum of min(dx/sx, dy/sy) over rows [j_begin, j_end); serial scan in
/// row-major order. Sets *bad to the first cell with a non-finite or
/// non-positive ratio, if any.
inline double min_dt_rows(const double* h, const double* qx, const double* qy, int nx,
                          int j_begin, int j_end, double dx, double dy, const PhysicsParams& p,
                          long long* bad) {
    double m = std::numeric_limits<double>::infinity();
    for (int j = j_begin; j < j_end; ++j) {
        const std::size_t row = static_cast<std::size_t>(j) * static_cast<std::size_t>(nx);
        for (int i = 0; i < nx; ++i) {
            const std::size_t k = row + static_cast<std::size_t>(i);
            // Same expressions as wave_speed, inlined so this loop never
            // throws from inside a worker thread; bad cells are flagged.
            const double c = std::sqrt(p.g * h[k]);
            const double sx = std::abs(qx[k] / h[k]) + c;
            const double sy = std::abs(qy[k] / h[k]) + c;
            const double r = std::min(dx / sx, dy / sy);
            if (!(r > 0.0) || !std::isfinite(r)) {
                if (*bad < 0) *bad = static_cast<long long>(k);
                continue;
            }
            if (r < m) m = r;
        }
    }
    return m;
}

}  // namespace detail

/// Checks every cell for finite values and h >= h_min. The scan order is
/// row-major, so the reported offender is deterministic regardless of how
/// callers parallelize detection.
inline GuardReport stability_guard(const FieldSet& fs, const StabilityPolicy& pol) {
    return detail::guard_rows(fs.h.data(), fs.qx.data(), fs.qy.data(), fs.spec.nx, 0, fs.spec.ny,
                              pol.h_min, fs.t);
}

/**
 * @brief Next time step from the global CFL reduction.
 *
 * dt = min( cfl * min over cells of min(dx/sx, dy/sy), dt_max, t_end - t ).
 *
 * The reduction runs over `workers` contiguous row bands; min is exact and
 * order-insensitive for finite inputs, so any worker count returns the
 * bit-identical value. The dt_min collapse check applies before the
 * end-time clamp: a tiny final step that merely lands on t_end is normal,
 * a collapsed CFL value is not.
 */
inline double compute_dt(const FieldSet& fs, const StabilityPolicy& pol, const PhysicsParams& p,
                         double t_end, int workers = 1) {
    const int nx = fs.spec.nx;
    const int ny = fs.spec.ny;
    if (workers < 1) {
        throw ConfigError("compute_dt: workers must be >= 1");
    }
    if (workers > ny) workers = ny;

    std::vector<double> mins(static_cast<std::size_t>(workers),
                             std::numeric_limits<double>::infinity());
    std::vector<long long> bads(static_cast<std::size_t>(workers), -1);

    auto run_band = [&](int w) {
        const int base = ny / workers;
        const int rem = ny % workers;
        const int j0 = w * base + std::min(w, rem);
        const int j1 = j0 + base + (w < rem ? 1 : 0);
        mins[static_cast<std::size_t>(w)] =
            detail::min_dt_rows(fs.h.data(), fs.qx.data(), fs.qy.data(), nx, j0, j1, fs.spec.dx,
                                fs.spec.dy, p, &bads[static_cast<std::size_t>(w)]);
    };

    if (workers == 1) {
        run_band(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(run_band, w);
        }
        for (auto& th : pool) th.join();
    }

    for (int w = 0; w < workers; ++w) {
        if (bads[static_cast<std::size_t>(w)] >= 0) {
            const auto [bi, bj] = cell_coords(fs.spec, static_cast<std::size_t>(bads[static_cast<std::size_t>(w)]));
            throw InstabilityError("compute_dt: non-finite wave speed", bi, bj, fs.t);
        }
    }

    double core = std::numeric_limits<double>::infinity();
    for (double m : mins) core = std::min(core, m);

    const double dt_raw = std::min(pol.cfl * core, pol.dt_max);
    if (dt_raw < pol.dt_min) {
        throw StepCollapseError("compute_dt: step size " + std::to_string(dt_raw) +
                                    " collapsed below dt_min " + std::to_string(pol.dt_min),
                                dt_raw, fs.t);
    }
    return std::min(dt_raw, t_end - fs.t);
}

}  // namespace swe
