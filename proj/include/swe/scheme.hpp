#pragma once

#include <cmath>

#include "swe/errors.hpp"
#include "swe/grid.hpp"

namespace swe {

/// Default dry threshold [m]; StabilityPolicy carries the configurable value.
inline constexpr double default_h_min = 1e-6;

/// Physical constants and optional model terms.
struct PhysicsParams {
    double g = 9.81;         ///< gravitational acceleration [m/s^2]
    double manning_n = 0.0;  ///< Manning roughness [s/m^(1/3)]; 0 = frictionless
    double nu_art = 0.0;     ///< artificial-diffusion coefficient in [0, 0.5); 0 = off

    bool operator==(const PhysicsParams&) const = default;
};

inline void validate_physics(const PhysicsParams& p) {
    if (!(p.g > 0.0) || !std::isfinite(p.g)) {
        throw ConfigError("physics: g must be positive and finite");
    }
    if (!(p.manning_n >= 0.0)) {
        throw ConfigError("physics: manning_n must be >= 0");
    }
    if (!(p.nu_art >= 0.0) || !(p.nu_art < 0.5)) {
        throw ConfigError("physics: nu_art must lie in [0, 0.5)");
    }
}

/// Signals an imminent dry cell (h below the threshold, or NaN).
inline void require_wet(const CellVec& u, double h_min) {
    if (!(u.h >= h_min)) {
        throw InstabilityError("depth below dry threshold", -1, -1, 0.0);
    }
}

/// x-direction flux F(U) = (qx, qx^2/h + g h^2/2, qx qy / h).
inline CellVec flux_x(const CellVec& u, const PhysicsParams& p, double h_min = default_h_min) {
    require_wet(u, h_min);
    return {u.qx, u.qx * u.qx / u.h + 0.5 * p.g * u.h * u.h, u.qx * u.qy / u.h};
}

/// y-direction flux G(U) = (qy, qx qy / h, qy^2/h + g h^2/2).
inline CellVec flux_y(const CellVec& u, const PhysicsParams& p, double h_min = default_h_min) {
    require_wet(u, h_min);
    return {u.qy, u.qx * u.qy / u.h, u.qy * u.qy / u.h + 0.5 * p.g * u.h * u.h};
}

/// Bed-slope and Manning-friction source terms. Mass component is zero.
inline CellVec source(const CellVec& u, double dzdx, double dzdy, const PhysicsParams& p,
                      double h_min = default_h_min) {
    require_wet(u, h_min);
    double fr = 0.0;
    if (p.manning_n > 0.0) {
        const double speed = std::sqrt(u.qx * u.qx + u.qy * u.qy) / u.h;
        fr = p.g * p.manning_n * p.manning_n * speed / std::pow(u.h, 4.0 / 3.0);
    }
    return {0.0, -p.g * u.h * dzdx - fr * u.qx, -p.g * u.h * dzdy - fr * u.qy};
}

/// Characteristic speeds (|u| + c, |v| + c) with c = sqrt(g h).
inline CellVec wave_speed_xy(const CellVec& u, const PhysicsParams& p, double h_min = default_h_min) {
    require_wet(u, h_min);
    const double c = std::sqrt(p.g * u.h);
    return {0.0, std::abs(u.qx / u.h) + c, std::abs(u.qy / u.h) + c};
}

struct WaveSpeed {
    double sx = 0.0;
    double sy = 0.0;
};

inline WaveSpeed wave_speed(const CellVec& u, const PhysicsParams& p, double h_min = default_h_min) {
    const CellVec s = wave_speed_xy(u, p, h_min);
    return {s.qx, s.qy};
}

/// One-sided difference orientation of the predictor stage. The corrector
/// always uses the opposite side; steps alternate to cancel the bias.
enum class SweepDirection { forward, backward };

inline SweepDirection sweep_for_step(unsigned long long step_index) {
    return (step_index % 2 == 0) ? SweepDirection::forward : SweepDirection::backward;
}

/**
 * @brief MacCormack predictor: one-sided flux differences plus source.
 *
 * U* = U - [ (dt/dx) dF + (dt/dy) dG ] + dt S(U)
 *
 * For a forward sweep the caller passes the east/north neighbors and
 * dF = F(nbr) - F(self); for a backward sweep the west/south neighbors
 * and dF = F(self) - F(nbr). The x- and y-contributions are summed before
 * subtracting so the update commutes bit-exactly with grid transposition.
 */
inline CellVec predictor_cell(const CellVec& self, const CellVec& nbr_x, const CellVec& nbr_y,
                              double dzdx, double dzdy, double dt, const GridSpec& spec,
                              const PhysicsParams& p, SweepDirection dir,
                              double h_min = default_h_min) {
    const CellVec fs = flux_x(self, p, h_min);
    const CellVec fn = flux_x(nbr_x, p, h_min);
    const CellVec gs = flux_y(self, p, h_min);
    const CellVec gn = flux_y(nbr_y, p, h_min);
    const CellVec df = (dir == SweepDirection::forward) ? fn - fs : fs - fn;
    const CellVec dg = (dir == SweepDirection::forward) ? gn - gs : gs - gn;
    const CellVec flux_sum = (dt / spec.dx) * df + (dt / spec.dy) * dg;
    const CellVec src = source(self, dzdx, dzdy, p, h_min);
    return (self - flux_sum) + dt * src;
}

/**
 * @brief MacCormack corrector, per-cell form.
 *
 * U^{n+1} = 1/2 [ U^n + U* - ( (dt/dx) dF* + (dt/dy) dG* ) + dt S(U*) ]
 *
 * @param dir the *predictor* direction of this step; the corrector applies
 *            the opposite one-sided difference, so for a forward sweep the
 *            caller passes the west/south U* neighbors and
 *            dF* = F(U*_self) - F(U*_nbr), mirrored for a backward sweep.
 */
inline CellVec corrector_cell(const CellVec& old, const CellVec& star_self,
                              const CellVec& star_nbr_x, const CellVec& star_nbr_y,
                              double dzdx, double dzdy, double dt, const GridSpec& spec,
                              const PhysicsParams& p, SweepDirection dir,
                              double h_min = default_h_min) {
    const CellVec fs = flux_x(star_self, p, h_min);
    const CellVec fn = flux_x(star_nbr_x, p, h_min);
    const CellVec gs = flux_y(star_self, p, h_min);
    const CellVec gn = flux_y(star_nbr_y, p, h_min);
    const CellVec df = (dir == SweepDirection::forward) ? fs - fn : fn - fs;
    const CellVec dg = (dir == SweepDirection::forward) ? gs - gn : gn - gs;
    const CellVec flux_sum = (dt / spec.dx) * df + (dt / spec.dy) * dg;
    const CellVec src = source(star_self, dzdx, dzdy, p, h_min);
    return 0.5 * (((old + star_self) - flux_sum) + dt * src);
}

/**
 * Interface flux for the combined predictor-corrector update. At interface
 * i+1/2 the committed-state flux comes from the cell the predictor differenced
 * toward and the U* flux from the other side:
 *
 *   forward sweep:  H_{i+1/2} = 1/2 [ F(U^n_{i+1}) + F(U*_i) ]
 *   backward sweep: H_{i+1/2} = 1/2 [ F(U^n_i) + F(U*_{i+1}) ]
 *
 * Both cells adjacent to an interior interface compute the identical value,
 * so the update telescopes: summed over the grid, interior fluxes cancel in
 * exact arithmetic and total mass changes only through boundary interfaces.
 */
inline CellVec iface_flux_x(const CellVec& committed_side, const CellVec& star_side,
                            const PhysicsParams& p, double h_min = default_h_min) {
    return 0.5 * (flux_x(committed_side, p, h_min) + flux_x(star_side, p, h_min));
}

inline CellVec iface_flux_y(const CellVec& committed_side, const CellVec& star_side,
                            const PhysicsParams& p, double h_min = default_h_min) {
    return 0.5 * (flux_y(committed_side, p, h_min) + flux_y(star_side, p, h_min));
}

/// Slip-wall interface flux, x-normal: no mass or tangential advection
/// crosses the wall, only the pressure acts on the adjacent cell. Using
/// exactly zero for the mass component is what makes closed-box runs
/// conserve volume to rounding.
inline CellVec wall_flux_x(const CellVec& committed_adj, const CellVec& star_adj,
                           const PhysicsParams& p, double h_min = default_h_min) {
    return {0.0, 0.5 * (flux_x(committed_adj, p, h_min).qx + flux_x(star_adj, p, h_min).qx), 0.0};
}

/// Slip-wall interface flux, y-normal.
inline CellVec wall_flux_y(const CellVec& committed_adj, const CellVec& star_adj,
                           const PhysicsParams& p, double h_min = default_h_min) {
    return {0.0, 0.0, 0.5 * (flux_y(committed_adj, p, h_min).qy + flux_y(star_adj, p, h_min).qy)};
}

/**
 * Flux-differencing corrector update from four interface fluxes. Equals
 * corrector_cell in exact arithmetic; the executor uses this form so that
 * interior fluxes telescope.
 *
 * @param src_sum S(U^n) + S(U*) at this cell
 */
inline CellVec corrector_update(const CellVec& old, const CellVec& hx_west, const CellVec& hx_east,
                                const CellVec& hy_south, const CellVec& hy_north,
                                const CellVec& src_sum, double dt, const GridSpec& spec) {
    const CellVec flux_sum =
        (dt / spec.dx) * (hx_east - hx_west) + (dt / spec.dy) * (hy_north - hy_south);
    return (old - flux_sum) + (0.5 * dt) * src_sum;
}

/// Optional 5-point artificial-diffusion pass:
/// U <- U + nu ((E-U)+(W-U)+(N-U)+(S-U)). nu = 0 returns self bit-exactly,
/// and a uniform neighborhood is a fixed point because each difference is
/// exactly zero.
inline CellVec smooth_cell(const CellVec& self, const CellVec& east, const CellVec& west,
                           const CellVec& north, const CellVec& south, double nu_art) {
    if (nu_art == 0.0) {
        return self;
    }
    const CellVec lap = ((east - self) + (west - self)) + ((north - self) + (south - self));
    return self + nu_art * lap;
}

}  // namespace swe
