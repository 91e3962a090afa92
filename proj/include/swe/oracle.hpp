#pragma once

#include <cmath>
#include <cstdlib>
#include <vector>

#include "swe/errors.hpp"
#include "swe/grid.hpp"

// Independent ground-truth computations for the validation suites. Nothing
// here may call into the scheme or executor code paths; the independence is
// the point.

namespace swe {

/// Analytic wet-bed dam-break solution: a rarefaction into the deep side, a
/// constant "star" region, and a shock into the shallow side.
struct DamBreakSolution {
    double h_l = 0.0;
    double h_r = 0.0;
    double g = 9.81;
    double h_star = 0.0;
    double u_star = 0.0;
    double shock_speed = 0.0;
};

namespace oracle_detail {

/// Velocity behind a shock moving into still water of depth h_r, as a
/// function of the depth h behind it (Rankine-Hugoniot).
inline double shock_velocity(double h, double h_r, double g) {
    return (h - h_r) * std::sqrt(0.5 * g * (h + h_r) / (h * h_r));
}

/// Velocity from the left rarefaction invariant u + 2c = 2c_l.
inline double rarefaction_velocity(double h, double h_l, double g) {
    return 2.0 * (std::sqrt(g * h_l) - std::sqrt(g * h));
}

}  // namespace oracle_detail

/**
 * Solves the star-region compatibility equation
 *   2 (c_l - sqrt(g h)) = (h - h_r) sqrt( g (h + h_r) / (2 h h_r) )
 * by bisection on (h_r, h_l) to 1e-12 relative tolerance.
 */
inline DamBreakSolution solve_stoker(double h_l, double h_r, double g) {
    if (!(h_l > h_r) || !(h_r > 0.0) || !(g > 0.0)) {
        throw ConfigError("solve_stoker: requires h_l > h_r > 0 and g > 0");
    }
    auto f = [&](double h) {
        return oracle_detail::rarefaction_velocity(h, h_l, g) -
               oracle_detail::shock_velocity(h, h_r, g);
    };
    double lo = h_r;
    double hi = h_l;
    // f(lo) > 0, f(hi) < 0.
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if ((hi - lo) <= 1e-12 * hi) break;
    }
    if ((hi - lo) > 1e-10 * hi) {
        throw std::runtime_error("solve_stoker: bisection failed to converge");
    }
    DamBreakSolution sol;
    sol.h_l = h_l;
    sol.h_r = h_r;
    sol.g = g;
    sol.h_star = 0.5 * (lo + hi);
    sol.u_star = oracle_detail::rarefaction_velocity(sol.h_star, h_l, g);
    sol.shock_speed = sol.h_star * sol.u_star / (sol.h_star - h_r);
    return sol;
}

struct ProfileSample {
    double h = 0.0;
    double u = 0.0;
};

/**
 * Depth and velocity at position x (relative to the dam) and time t > 0:
 * undisturbed left state, rarefaction fan, star region, undisturbed right
 * state beyond the shock.
 */
inline ProfileSample sample_profile(const DamBreakSolution& sol, double x, double t) {
    if (!(t > 0.0)) {
        throw ConfigError("sample_profile: t must be > 0");
    }
    const double c_l = std::sqrt(sol.g * sol.h_l);
    const double c_star = std::sqrt(sol.g * sol.h_star);
    const double xi = x / t;
    if (xi <= -c_l) {
        return {sol.h_l, 0.0};
    }
    if (xi < sol.u_star - c_star) {
        const double c = (2.0 * c_l - xi) / 3.0;
        return {c * c / sol.g, (2.0 / 3.0) * (xi + c_l)};
    }
    if (xi < sol.shock_speed) {
        return {sol.h_star, sol.u_star};
    }
    return {sol.h_r, 0.0};
}

/**
 * Maximum relative volume drift over a run:
 *   drift = max_t |V(t) - V(0) - net_inflow(t)| / V(0).
 * `net_inflow` holds the externally-accounted boundary volume added by each
 * snapshot time (empty means a closed box).
 */
inline double conservation_drift(const std::vector<double>& volumes,
                                 const std::vector<double>& net_inflow = {}) {
    if (volumes.empty()) {
        return 0.0;
    }
    const double v0 = volumes.front();
    double worst = 0.0;
    for (std::size_t k = 0; k < volumes.size(); ++k) {
        const double in = k < net_inflow.size() ? net_inflow[k] : 0.0;
        worst = std::max(worst, std::abs(volumes[k] - v0 - in));
    }
    return worst / v0;
}

/// Convenience overload over full states.
inline double conservation_drift_states(const std::vector<FieldSet>& history,
                                        const std::vector<double>& net_inflow = {}) {
    std::vector<double> volumes;
    volumes.reserve(history.size());
    for (const FieldSet& fs : history) volumes.push_back(total_volume(fs));
    return conservation_drift(volumes, net_inflow);
}

/// Mirror axis for symmetry_error: `x` mirrors columns (i <-> nx-1-i),
/// `y` mirrors rows.
enum class MirrorAxis { x, y };

/**
 * Maximum absolute mismatch between mirrored cell pairs: depth must match,
 * the mirror-normal momentum must negate, the tangential momentum must match.
 */
inline double symmetry_error(const FieldSet& fs, MirrorAxis axis) {
    const int nx = fs.spec.nx;
    const int ny = fs.spec.ny;
    double worst = 0.0;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int mi = axis == MirrorAxis::x ? nx - 1 - i : i;
            const int mj = axis == MirrorAxis::y ? ny - 1 - j : j;
            const std::size_t a = fs.idx(i, j);
            const std::size_t b = fs.idx(mi, mj);
            const double dh = std::abs(fs.h[a] - fs.h[b]);
            const double dqn = axis == MirrorAxis::x ? std::abs(fs.qx[a] + fs.qx[b])
                                                     : std::abs(fs.qy[a] + fs.qy[b]);
            const double dqt = axis == MirrorAxis::x ? std::abs(fs.qy[a] - fs.qy[b])
                                                     : std::abs(fs.qx[a] - fs.qx[b]);
            worst = std::max({worst, dh, dqn, dqt});
        }
    }
    return worst;
}

}  // namespace swe
