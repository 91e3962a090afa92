#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "swe/errors.hpp"
#include "swe/grid.hpp"
#include "swe/scheme.hpp"
#include "swe/timestep.hpp"

namespace swe {

// ---------------------------------------------------------------------------
// Execution strategies
// ---------------------------------------------------------------------------

/// How a time step is executed. All strategies commit bit-identical states;
/// they differ only in memory staging and parallelism.
struct ExecutorKind {
    enum class Strategy { naive, tiled, decomposed };
    enum class Inner { naive, tiled };

    Strategy strategy = Strategy::naive;
    int tile = 16;              ///< tile side [cells], tiled strategies
    int workers = 1;            ///< worker count, decomposed strategy
    Inner inner = Inner::naive; ///< per-band strategy, decomposed only

    static ExecutorKind naive() { return {}; }

    static ExecutorKind tiled(int tile_cells = 16) {
        ExecutorKind k;
        k.strategy = Strategy::tiled;
        k.tile = tile_cells;
        return k;
    }

    static ExecutorKind decomposed(int worker_count, Inner inner_kind = Inner::naive,
                                   int tile_cells = 16) {
        ExecutorKind k;
        k.strategy = Strategy::decomposed;
        k.workers = worker_count;
        k.inner = inner_kind;
        k.tile = tile_cells;
        return k;
    }

    std::string name() const {
        switch (strategy) {
            case Strategy::naive: return "naive";
            case Strategy::tiled: return "tiled:" + std::to_string(tile);
            case Strategy::decomposed:
                return "decomposed:" + std::to_string(workers) +
                       (inner == Inner::tiled ? ":tiled" + std::to_string(tile) : "");
        }
        return "?";
    }

    bool operator==(const ExecutorKind&) const = default;
};

/// Halo stages of the fused tile pass.
enum class HaloStage { committed, star };

/// Halo width in cells staged alongside a tile (or scanline band) for the
/// given stage. The corrector at a tile cell needs U* one cell upwind; that
/// U* needs committed state one cell further, and the sweep alternation can
/// point either difference away from the tile, so the committed stage is
/// sized for both parities.
constexpr int tile_halo_extent(HaloStage stage) {
    return stage == HaloStage::committed ? 2 : 1;
}

/// Side length of the committed-state block staged for a tile.
constexpr int staged_committed_extent(int tile) {
    return tile + 2 * tile_halo_extent(HaloStage::committed);
}

/// Side length of the region the predictor is evaluated on per tile.
constexpr int staged_star_extent(int tile) {
    return tile + 2 * tile_halo_extent(HaloStage::star);
}

inline void validate_executor(const ExecutorKind& kind) {
    if (kind.strategy == ExecutorKind::Strategy::tiled ||
        (kind.strategy == ExecutorKind::Strategy::decomposed &&
         kind.inner == ExecutorKind::Inner::tiled)) {
        if (kind.tile < 2 * tile_halo_extent(HaloStage::committed)) {
            throw ConfigError("executor: tile must be at least " +
                              std::to_string(2 * tile_halo_extent(HaloStage::committed)) +
                              " cells, got " + std::to_string(kind.tile));
        }
    }
    if (kind.strategy == ExecutorKind::Strategy::decomposed && kind.workers < 1) {
        throw ConfigError("executor: workers must be >= 1");
    }
}

// ---------------------------------------------------------------------------
// Step plan
// ---------------------------------------------------------------------------

/// The barrier-separated kernels of one time step, in order. Each kernel
/// reads only buffers fully written by earlier kernels; within a kernel,
/// no cell output is read by a sibling cell.
enum class Kernel {
    ghost_fill_committed,  ///< K1: boundary ghosts of the committed state
    predictor,             ///< K2: U* over all cells
    ghost_fill_star,       ///< K3: boundary ghosts of U*
    corrector,             ///< K4: U^{n+1} (+ optional diffusion sub-pass)
    stability_guard,       ///< K5: dry/NaN detection on the candidate state
    wave_speed_reduce,     ///< K6: global CFL reduction -> next dt
};

inline const char* kernel_name(Kernel k) {
    switch (k) {
        case Kernel::ghost_fill_committed: return "k1_ghost_committed";
        case Kernel::predictor: return "k2_predictor";
        case Kernel::ghost_fill_star: return "k3_ghost_star";
        case Kernel::corrector: return "k4_corrector";
        case Kernel::stability_guard: return "k5_guard";
        case Kernel::wave_speed_reduce: return "k6_dt_reduce";
    }
    return "?";
}

/// The plan is data: executors consume the kernel list, so alternative
/// decompositions can be added without touching them.
struct StepPlan {
    std::vector<Kernel> kernels;
    bool smoothing = false;  ///< corrector kernel runs the diffusion sub-pass

    static StepPlan standard(bool with_smoothing) {
        StepPlan plan;
        plan.kernels = {Kernel::ghost_fill_committed, Kernel::predictor, Kernel::ghost_fill_star,
                        Kernel::corrector,            Kernel::stability_guard,
                        Kernel::wave_speed_reduce};
        plan.smoothing = with_smoothing;
        return plan;
    }
};

/// Wall-clock seconds per kernel slot, plus the smoothing sub-pass and the
/// decomposed halo exchange. Informational only; never part of any
/// determinism contract.
struct StepTimings {
    std::array<double, 6> kernel_seconds{};  // indexed by Kernel
    double smooth_seconds = 0.0;
    double exchange_seconds = 0.0;

    double total() const {
        double s = smooth_seconds + exchange_seconds;
        for (double k : kernel_seconds) s += k;
        return s;
    }

    StepTimings& operator+=(const StepTimings& o) {
        for (std::size_t k = 0; k < kernel_seconds.size(); ++k) {
            kernel_seconds[k] += o.kernel_seconds[k];
        }
        smooth_seconds += o.smooth_seconds;
        exchange_seconds += o.exchange_seconds;
        return *this;
    }
};

// ---------------------------------------------------------------------------
// Scanline partition and halo accounting
// ---------------------------------------------------------------------------

/// Contiguous row band [j_begin, j_end), one per worker.
struct RowBand {
    int j_begin = 0;
    int j_end = 0;

    int rows() const { return j_end - j_begin; }
    bool operator==(const RowBand&) const = default;
};

/// Splits [0, ny) into `workers` contiguous bands whose sizes differ by at
/// most one, larger bands first.
inline std::vector<RowBand> partition_scanlines(int ny, int workers) {
    if (workers < 1) {
        throw ConfigError("partition_scanlines: workers must be >= 1");
    }
    if (ny < workers) {
        throw ConfigError("partition_scanlines: " + std::to_string(workers) +
                          " workers need at least as many rows, grid has " + std::to_string(ny));
    }
    std::vector<RowBand> bands;
    bands.reserve(static_cast<std::size_t>(workers));
    const int base = ny / workers;
    const int rem = ny % workers;
    int j = 0;
    for (int w = 0; w < workers; ++w) {
        const int rows = base + (w < rem ? 1 : 0);
        bands.push_back({j, j + rows});
        j += rows;
    }
    return bands;
}

/// Values copied per step by the decomposed halo exchange: every internal
/// band boundary moves 2 rows in each direction, 3 fields per cell.
inline long long halo_exchange_values(int workers, int nx) {
    if (workers <= 1) return 0;
    return static_cast<long long>(workers - 1) * 2 * 2 * nx * 3;
}

/// Per-step work and traffic accounting for the run report.
struct StepAccounting {
    long long halo_values_exchanged = 0;   ///< decomposed copies per step
    int redundant_star_rows = 0;           ///< predictor rows recomputed per step
    int redundant_corrector_rows = 0;      ///< corrector rows recomputed per step
};

// ---------------------------------------------------------------------------
// Step result
// ---------------------------------------------------------------------------

struct StepResult {
    double dt_used = 0.0;
    double dt_next = 0.0;     ///< raw CFL dt from the committed state, before any end-time clamp
    int guard_warnings = 0;   ///< FixedElevation ghost clamps during this step
};

/// StepResult plus the committed state, for the single-shot free function.
struct StepOutput {
    FieldSet committed;
    StepResult result;
};

// ---------------------------------------------------------------------------
// Internals
// ---------------------------------------------------------------------------

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// One scalar field over a rectangle of global cell coordinates
/// [col0, col0+width) x [row0, row0+height).
struct Field2D {
    std::vector<double> v;
    int col0 = 0;
    int row0 = 0;
    int width = 0;
    int height = 0;

    void reset(int c0, int r0, int w, int h) {
        col0 = c0;
        row0 = r0;
        width = w;
        height = h;
        v.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0.0);
    }

    double& at(int i, int j) {
        return v[static_cast<std::size_t>(j - row0) * static_cast<std::size_t>(width) +
                 static_cast<std::size_t>(i - col0)];
    }

    double at(int i, int j) const {
        return v[static_cast<std::size_t>(j - row0) * static_cast<std::size_t>(width) +
                 static_cast<std::size_t>(i - col0)];
    }

};

/// The (h, qx, qy) triple over a coordinate rectangle.
struct StateBuf {
    Field2D h, qx, qy;

    void reset(int c0, int r0, int w, int ht) {
        h.reset(c0, r0, w, ht);
        qx.reset(c0, r0, w, ht);
        qy.reset(c0, r0, w, ht);
    }

    CellVec at(int i, int j) const { return {h.at(i, j), qx.at(i, j), qy.at(i, j)}; }

    void set(int i, int j, const CellVec& u) {
        h.at(i, j) = u.h;
        qx.at(i, j) = u.qx;
        qy.at(i, j) = u.qy;
    }
};

/// Immutable per-run context shared by every kernel.
struct DomainCtx {
    GridSpec spec;
    PhysicsParams phys;
    StabilityPolicy pol;
    BoundarySet bounds;
    std::vector<double> z;     ///< bed elevation, nx*ny row-major
    std::vector<double> dzdx;  ///< central bed slope, nx*ny
    std::vector<double> dzdy;

    double z_at(int i, int j) const {
        return z[static_cast<std::size_t>(j) * static_cast<std::size_t>(spec.nx) +
                 static_cast<std::size_t>(i)];
    }

    double slope_x(int i, int j) const {
        return dzdx[static_cast<std::size_t>(j) * static_cast<std::size_t>(spec.nx) +
                    static_cast<std::size_t>(i)];
    }

    double slope_y(int i, int j) const {
        return dzdy[static_cast<std::size_t>(j) * static_cast<std::size_t>(spec.nx) +
                    static_cast<std::size_t>(i)];
    }
};

/**
 * Executor-side state of an InflowDischarge edge: the prescribed discharge
 * at the *interior* depth (depth-extrapolated, the standard subcritical
 * discharge condition). Pinning the ghost depth to h_in instead puts a
 * standing pressure jump on the inlet face once the pool level moves, and
 * the jump odd-even decouples the inlet column.
 */
inline CellVec pump_state(Edge edge, const BoundaryKind& bk, const CellVec& interior) {
    switch (edge) {
        case Edge::west: return {interior.h, bk.q_n, 0.0};
        case Edge::east: return {interior.h, -bk.q_n, 0.0};
        case Edge::south: return {interior.h, 0.0, bk.q_n};
        case Edge::north: return {interior.h, 0.0, -bk.q_n};
    }
    throw std::logic_error("pump_state: bad edge");
}

inline CellVec edge_ghost(Edge edge, const BoundaryKind& bk, const CellVec& interior,
                          double z_interior, double h_min, bool* clamped) {
    if (bk.type == BoundaryKind::Type::inflow_discharge) {
        return pump_state(edge, bk, interior);
    }
    return ghost_value(edge, bk, interior, z_interior, h_min, clamped);
}

inline DomainCtx make_domain_ctx(const GridSpec& spec, const PhysicsParams& phys,
                                 const StabilityPolicy& pol, const BoundarySet& bounds,
                                 const std::vector<double>& z) {
    DomainCtx d;
    d.spec = spec;
    d.phys = phys;
    d.pol = pol;
    d.bounds = bounds;
    d.z = z;
    d.dzdx.assign(spec.cell_count(), 0.0);
    d.dzdy.assign(spec.cell_count(), 0.0);
    // Central differences with the bed extended flat across each edge.
    for (int j = 0; j < spec.ny; ++j) {
        for (int i = 0; i < spec.nx; ++i) {
            const int iw = std::max(i - 1, 0);
            const int ie = std::min(i + 1, spec.nx - 1);
            const int js = std::max(j - 1, 0);
            const int jn = std::min(j + 1, spec.ny - 1);
            const std::size_t k = static_cast<std::size_t>(j) * static_cast<std::size_t>(spec.nx) +
                                  static_cast<std::size_t>(i);
            d.dzdx[k] = (d.z_at(ie, j) - d.z_at(iw, j)) / (2.0 * spec.dx);
            d.dzdy[k] = (d.z_at(i, jn) - d.z_at(i, js)) / (2.0 * spec.dy);
        }
    }
    return d;
}

/**
 * Fills boundary ghost slots of `s` from its own interior values:
 * x-ghosts at i = -1 and i = nx for rows [j0, j1), and, when the buffer
 * touches a domain edge, y-ghost rows at j = -1 / j = ny for all columns.
 * Returns the number of FixedElevation depth clamps.
 */
inline int fill_ghosts(StateBuf& s, const DomainCtx& d, int j0, int j1, bool south_edge,
                       bool north_edge) {
    const int nx = d.spec.nx;
    const int ny = d.spec.ny;
    bool clamped = false;
    for (int j = std::max(j0, 0); j < std::min(j1, ny); ++j) {
        s.set(-1, j, edge_ghost(Edge::west, d.bounds.west, s.at(0, j), d.z_at(0, j), d.pol.h_min,
                                &clamped));
        s.set(nx, j, edge_ghost(Edge::east, d.bounds.east, s.at(nx - 1, j), d.z_at(nx - 1, j),
                                d.pol.h_min, &clamped));
    }
    if (south_edge) {
        for (int i = 0; i < nx; ++i) {
            s.set(i, -1, edge_ghost(Edge::south, d.bounds.south, s.at(i, 0), d.z_at(i, 0),
                                    d.pol.h_min, &clamped));
        }
    }
    if (north_edge) {
        for (int i = 0; i < nx; ++i) {
            s.set(i, ny, edge_ghost(Edge::north, d.bounds.north, s.at(i, ny - 1),
                                    d.z_at(i, ny - 1), d.pol.h_min, &clamped));
        }
    }
    return clamped ? 1 : 0;
}

/// Predictor for one cell, reading the committed buffer (ghosts included).
inline CellVec predictor_at(const StateBuf& cur, const DomainCtx& d, double dt, SweepDirection dir,
                            int i, int j) {
    const int di = (dir == SweepDirection::forward) ? 1 : -1;
    return predictor_cell(cur.at(i, j), cur.at(i + di, j), cur.at(i, j + di), d.slope_x(i, j),
                          d.slope_y(i, j), dt, d.spec, d.phys, dir, d.pol.h_min);
}

/// K2 over rows [j0, j1), all columns. Inputs are one committed buffer;
/// outputs go to disjoint star slots, so cells are order-independent.
inline void predictor_rows(const StateBuf& cur, StateBuf& star, const DomainCtx& d, double dt,
                           SweepDirection dir, int j0, int j1) {
    for (int j = j0; j < j1; ++j) {
        for (int i = 0; i < d.spec.nx; ++i) {
            star.set(i, j, predictor_at(cur, d, dt, dir, i, j));
        }
    }
}

inline void require_wet_at(const CellVec& u, double h_min, int i, int j, double t) {
    if (!(u.h >= h_min)) {
        throw InstabilityError("predicted depth " + std::to_string(u.h) +
                                   " below dry threshold at cell (" + std::to_string(i) + ", " +
                                   std::to_string(j) + ")",
                               i, j, t);
    }
}

/**
 * Flux-differencing corrector for one cell.
 *
 * Interface fluxes pair the committed state on the side the predictor
 * differenced toward with U* on the other side; both cells adjacent to an
 * interior interface compute the bit-identical value, so summed over the
 * grid the interior fluxes telescope. Two boundary kinds impose their flux
 * strongly instead of averaging with a ghost: reflective walls carry a
 * pressure-only flux whose mass component is exactly zero (closed-box
 * volume then holds to rounding), and inflow edges carry the full flux of
 * the prescribed inflow state (the admitted volume is then exactly
 * q_n * edge length * time, which the mass-balance oracles check).
 */
inline CellVec corrector_at(const StateBuf& cur, const StateBuf& star, const DomainCtx& d,
                            double dt, SweepDirection dir, int i, int j, double t_now) {
    const int nx = d.spec.nx;
    const int ny = d.spec.ny;
    const bool fwd = dir == SweepDirection::forward;
    const double h_min = d.pol.h_min;

    const CellVec old = cur.at(i, j);
    const CellVec ss = star.at(i, j);
    require_wet_at(ss, h_min, i, j, t_now);

    const auto is_wall = [](const BoundaryKind& bk) {
        return bk.type == BoundaryKind::Type::reflective_wall;
    };
    const auto is_inflow = [](const BoundaryKind& bk) {
        return bk.type == BoundaryKind::Type::inflow_discharge;
    };

    CellVec hx_west, hx_east, hy_south, hy_north;

    if (i == 0 && is_wall(d.bounds.west)) {
        hx_west = wall_flux_x(old, ss, d.phys, h_min);
    } else if (i == 0 && is_inflow(d.bounds.west)) {
        hx_west = iface_flux_x(pump_state(Edge::west, d.bounds.west, old),
                               pump_state(Edge::west, d.bounds.west, ss), d.phys, h_min);
    } else {
        const CellVec cw = fwd ? old : cur.at(i - 1, j);
        const CellVec sw = fwd ? star.at(i - 1, j) : ss;
        require_wet_at(sw, h_min, i, j, t_now);
        hx_west = iface_flux_x(cw, sw, d.phys, h_min);
    }
    if (i == nx - 1 && is_wall(d.bounds.east)) {
        hx_east = wall_flux_x(old, ss, d.phys, h_min);
    } else if (i == nx - 1 && is_inflow(d.bounds.east)) {
        hx_east = iface_flux_x(pump_state(Edge::east, d.bounds.east, old),
                               pump_state(Edge::east, d.bounds.east, ss), d.phys, h_min);
    } else {
        const CellVec ce = fwd ? cur.at(i + 1, j) : old;
        const CellVec se = fwd ? ss : star.at(i + 1, j);
        require_wet_at(se, h_min, i, j, t_now);
        hx_east = iface_flux_x(ce, se, d.phys, h_min);
    }
    if (j == 0 && is_wall(d.bounds.south)) {
        hy_south = wall_flux_y(old, ss, d.phys, h_min);
    } else if (j == 0 && is_inflow(d.bounds.south)) {
        hy_south = iface_flux_y(pump_state(Edge::south, d.bounds.south, old),
                                pump_state(Edge::south, d.bounds.south, ss), d.phys, h_min);
    } else {
        const CellVec cs = fwd ? old : cur.at(i, j - 1);
        const CellVec sst = fwd ? star.at(i, j - 1) : ss;
        require_wet_at(sst, h_min, i, j, t_now);
        hy_south = iface_flux_y(cs, sst, d.phys, h_min);
    }
    if (j == ny - 1 && is_wall(d.bounds.north)) {
        hy_north = wall_flux_y(old, ss, d.phys, h_min);
    } else if (j == ny - 1 && is_inflow(d.bounds.north)) {
        hy_north = iface_flux_y(pump_state(Edge::north, d.bounds.north, old),
                                pump_state(Edge::north, d.bounds.north, ss), d.phys, h_min);
    } else {
        const CellVec cn = fwd ? cur.at(i, j + 1) : old;
        const CellVec sn = fwd ? ss : star.at(i, j + 1);
        require_wet_at(sn, h_min, i, j, t_now);
        hy_north = iface_flux_y(cn, sn, d.phys, h_min);
    }

    const CellVec src_sum = source(old, d.slope_x(i, j), d.slope_y(i, j), d.phys, h_min) +
                            source(ss, d.slope_x(i, j), d.slope_y(i, j), d.phys, h_min);
    return corrector_update(old, hx_west, hx_east, hy_south, hy_north, src_sum, dt, d.spec);
}

/// K4 over rows [j0, j1).
inline void corrector_rows(const StateBuf& cur, const StateBuf& star, StateBuf& out,
                           const DomainCtx& d, double dt, SweepDirection dir, int j0, int j1,
                           double t_now) {
    for (int j = j0; j < j1; ++j) {
        for (int i = 0; i < d.spec.nx; ++i) {
            out.set(i, j, corrector_at(cur, star, d, dt, dir, i, j, t_now));
        }
    }
}

/// Diffusion sub-pass over rows [j0, j1); `in` must have its ghosts filled.
inline void smooth_rows(const StateBuf& in, StateBuf& out, const DomainCtx& d, int j0, int j1) {
    for (int j = j0; j < j1; ++j) {
        for (int i = 0; i < d.spec.nx; ++i) {
            out.set(i, j, smooth_cell(in.at(i, j), in.at(i + 1, j), in.at(i - 1, j),
                                      in.at(i, j + 1), in.at(i, j - 1), d.phys.nu_art));
        }
    }
}

/// K5 over rows [j0, j1) of a buffer; row-major first offender.
inline GuardReport guard_rows_buf(const StateBuf& s, const DomainCtx& d, int j0, int j1,
                                  double t) {
    for (int j = j0; j < j1; ++j) {
        for (int i = 0; i < d.spec.nx; ++i) {
            const CellVec u = s.at(i, j);
            const bool ok = std::isfinite(u.h) && std::isfinite(u.qx) && std::isfinite(u.qy) &&
                            u.h >= d.pol.h_min;
            if (!ok) {
                return {false, i, j, u.h, u.qx, u.qy, t};
            }
        }
    }
    return {};
}

/// K6 over rows [j0, j1): min of min(dx/sx, dy/sy). Bit-identical to the
/// standalone compute_dt reduction on the same values.
inline double min_dt_rows_buf(const StateBuf& s, const DomainCtx& d, int j0, int j1,
                              long long* bad) {
    double m = std::numeric_limits<double>::infinity();
    for (int j = j0; j < j1; ++j) {
        for (int i = 0; i < d.spec.nx; ++i) {
            const CellVec u = s.at(i, j);
            const double c = std::sqrt(d.phys.g * u.h);
            const double sx = std::abs(u.qx / u.h) + c;
            const double sy = std::abs(u.qy / u.h) + c;
            const double r = std::min(d.spec.dx / sx, d.spec.dy / sy);
            if (!(r > 0.0) || !std::isfinite(r)) {
                if (*bad < 0) {
                    *bad = static_cast<long long>(j) * d.spec.nx + i;
                }
                continue;
            }
            if (r < m) m = r;
        }
    }
    return m;
}

/**
 * Fused K2-K4 tile pass over tiles covering rows [j0, j1).
 *
 * Each tile stages the committed state with a width-2 halo, evaluates the
 * predictor on the tile plus a width-1 ring (redundantly recomputing ring
 * values that neighboring tiles also compute), substitutes boundary ghosts
 * for out-of-domain ring slots, and runs the corrector on the tile proper.
 *
 * Staging source coordinates are clamped into [valid_j_lo, valid_j_hi];
 * slots whose true source lies outside that range are never consumed, the
 * clamp just keeps them wet and finite. `committed_halo` is a test hook:
 * the staged block always spans the full extent, but sources are clamped
 * into the given halo around the tile, so an under-provisioned halo yields
 * wrong (finite) staged values the executor-equivalence oracle must detect.
 */
inline void tile_pass_rows(const StateBuf& cur, StateBuf& out, const DomainCtx& d, double dt,
                           SweepDirection dir, int tile, int j0, int j1, double t_now,
                           int valid_j_lo, int valid_j_hi,
                           int committed_halo = tile_halo_extent(HaloStage::committed)) {
    const int nx = d.spec.nx;
    const int ny = d.spec.ny;
    const int full_halo = tile_halo_extent(HaloStage::committed);
    const int star_halo = tile_halo_extent(HaloStage::star);

    StateBuf staged;
    StateBuf star_loc;

    for (int ty = j0; ty < j1; ty += tile) {
        const int y1 = std::min(ty + tile, j1);
        for (int tx = 0; tx < nx; tx += tile) {
            const int x1 = std::min(tx + tile, nx);

            // Stage committed state (ghost ring of `cur` included).
            const int sc0 = tx - full_halo;
            const int sr0 = ty - full_halo;
            const int sw = (x1 - tx) + 2 * full_halo;
            const int sh = (y1 - ty) + 2 * full_halo;
            staged.reset(sc0, sr0, sw, sh);
            for (int j = sr0; j < sr0 + sh; ++j) {
                const int jj =
                    std::clamp(std::clamp(j, ty - committed_halo, y1 - 1 + committed_halo),
                               valid_j_lo, valid_j_hi);
                for (int i = sc0; i < sc0 + sw; ++i) {
                    const int ii = std::clamp(
                        std::clamp(i, tx - committed_halo, x1 - 1 + committed_halo), -1, nx);
                    staged.h.at(i, j) = cur.h.at(ii, jj);
                    staged.qx.at(i, j) = cur.qx.at(ii, jj);
                    staged.qy.at(i, j) = cur.qy.at(ii, jj);
                }
            }

            // Predictor on the tile plus its ring, in-domain cells only.
            star_loc.reset(tx - star_halo, ty - star_halo, (x1 - tx) + 2 * star_halo,
                           (y1 - ty) + 2 * star_halo);
            const int px0 = std::max(tx - star_halo, 0);
            const int px1 = std::min(x1 + star_halo, nx);
            const int py0 = std::max(ty - star_halo, 0);
            const int py1 = std::min(y1 + star_halo, ny);
            const int di = (dir == SweepDirection::forward) ? 1 : -1;
            for (int j = py0; j < py1; ++j) {
                for (int i = px0; i < px1; ++i) {
                    const CellVec self = staged.at(i, j);
                    const CellVec nbx = staged.at(i + di, j);
                    const CellVec nby = staged.at(i, j + di);
                    star_loc.set(i, j, predictor_cell(self, nbx, nby, d.slope_x(i, j),
                                                      d.slope_y(i, j), dt, d.spec, d.phys, dir,
                                                      d.pol.h_min));
                }
            }

            // Out-of-domain ring slots take boundary ghosts of U*.
            if (py0 == 0 && ty - star_halo < 0) {
                for (int i = px0; i < px1; ++i) {
                    star_loc.set(i, -1, edge_ghost(Edge::south, d.bounds.south, star_loc.at(i, 0),
                                                   d.z_at(i, 0), d.pol.h_min, nullptr));
                }
            }
            if (py1 == ny && y1 + star_halo > ny) {
                for (int i = px0; i < px1; ++i) {
                    star_loc.set(i, ny, edge_ghost(Edge::north, d.bounds.north,
                                                   star_loc.at(i, ny - 1), d.z_at(i, ny - 1),
                                                   d.pol.h_min, nullptr));
                }
            }
            if (px0 == 0 && tx - star_halo < 0) {
                for (int j = py0; j < py1; ++j) {
                    star_loc.set(-1, j, edge_ghost(Edge::west, d.bounds.west, star_loc.at(0, j),
                                                   d.z_at(0, j), d.pol.h_min, nullptr));
                }
            }
            if (px1 == nx && x1 + star_halo > nx) {
                for (int j = py0; j < py1; ++j) {
                    star_loc.set(nx, j, edge_ghost(Edge::east, d.bounds.east,
                                                   star_loc.at(nx - 1, j), d.z_at(nx - 1, j),
                                                   d.pol.h_min, nullptr));
                }
            }

            // Corrector on the tile proper.
            for (int j = ty; j < y1; ++j) {
                for (int i = tx; i < x1; ++i) {
                    out.set(i, j, corrector_at(staged, star_loc, d, dt, dir, i, j, t_now));
                }
            }
        }
    }
}

/// Predictor row range computed by a band for this step: the symmetric
/// one-row overlap when the diffusion pass is off, otherwise the
/// parity-dependent range whose inputs fit in the width-2 committed halo.
inline RowBand band_star_range(const RowBand& own, SweepDirection dir, bool smoothing, int ny) {
    if (!smoothing) {
        return {std::max(own.j_begin - 1, 0), std::min(own.j_end + 1, ny)};
    }
    if (dir == SweepDirection::forward) {
        return {std::max(own.j_begin - 2, 0), std::min(own.j_end + 1, ny)};
    }
    return {std::max(own.j_begin - 1, 0), std::min(own.j_end + 2, ny)};
}

/// Corrector row range computed by a band for this step.
inline RowBand band_corrector_range(const RowBand& own, bool smoothing, int ny) {
    if (!smoothing) return own;
    return {std::max(own.j_begin - 1, 0), std::min(own.j_end + 1, ny)};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Stepper
// ---------------------------------------------------------------------------

/**
 * @brief Owns the double-buffered state and executes time steps.
 *
 * The committed state is never written in place: a step runs the plan's
 * kernels into scratch buffers, passes the stability guard, and only then
 * swaps. On any failure the previously committed state is intact.
 *
 * The committed result of a step is a pure function of (state, dt, step
 * parity, physics, boundaries) and is bit-identical for every ExecutorKind
 * and worker count.
 */
class Stepper {
public:
    Stepper(const GridSpec& spec, const PhysicsParams& phys, const StabilityPolicy& pol,
            const BoundarySet& bounds, const ExecutorKind& kind)
        : kind_(kind), plan_(StepPlan::standard(phys.nu_art > 0.0)) {
        validate_physics(phys);
        validate_policy(pol);
        validate_executor(kind);
        validate_boundary(bounds.north, pol.h_min, "north");
        validate_boundary(bounds.south, pol.h_min, "south");
        validate_boundary(bounds.east, pol.h_min, "east");
        validate_boundary(bounds.west, pol.h_min, "west");
        ctx_.spec = spec;
        ctx_.phys = phys;
        ctx_.pol = pol;
        ctx_.bounds = bounds;
        if (kind.strategy == ExecutorKind::Strategy::decomposed) {
            bands_ = partition_scanlines(spec.ny, kind.workers);
            const int min_rows = 2 * tile_halo_extent(HaloStage::committed);
            for (const RowBand& b : bands_) {
                if (b.rows() < min_rows && kind.workers > 1) {
                    throw ConfigError("executor: decomposed bands need at least " +
                                      std::to_string(min_rows) + " rows; " +
                                      std::to_string(kind.workers) + " workers on " +
                                      std::to_string(spec.ny) + " rows leaves a band with " +
                                      std::to_string(b.rows()));
                }
            }
        }
        cur_.reset(-1, -1, spec.nx + 2, spec.ny + 2);
        star_.reset(-1, -1, spec.nx + 2, spec.ny + 2);
        next_.reset(-1, -1, spec.nx + 2, spec.ny + 2);
        if (plan_.smoothing) {
            aux_.reset(-1, -1, spec.nx + 2, spec.ny + 2);
        }
    }

    /// Loads a committed state. The FieldSet's bed becomes the run's bed.
    void load(const FieldSet& fs) {
        if (fs.spec != ctx_.spec) {
            throw ConfigError("Stepper::load: grid mismatch");
        }
        DomainCtx fresh = detail::make_domain_ctx(fs.spec, ctx_.phys, ctx_.pol, ctx_.bounds, fs.z);
        ctx_.z = std::move(fresh.z);
        ctx_.dzdx = std::move(fresh.dzdx);
        ctx_.dzdy = std::move(fresh.dzdy);
        for (int j = 0; j < ctx_.spec.ny; ++j) {
            for (int i = 0; i < ctx_.spec.nx; ++i) {
                const std::size_t k = fs.idx(i, j);
                cur_.set(i, j, {fs.h[k], fs.qx[k], fs.qy[k]});
            }
        }
        t_ = fs.t;
        loaded_ = true;
    }

    /// Extracts the committed state.
    FieldSet state() const {
        FieldSet fs(ctx_.spec);
        fs.z = ctx_.z;
        fs.t = t_;
        for (int j = 0; j < ctx_.spec.ny; ++j) {
            for (int i = 0; i < ctx_.spec.nx; ++i) {
                const std::size_t k = fs.idx(i, j);
                const CellVec u = cur_.at(i, j);
                fs.h[k] = u.h;
                fs.qx[k] = u.qx;
                fs.qy[k] = u.qy;
            }
        }
        return fs;
    }

    double time() const { return t_; }

    const StepPlan& plan() const { return plan_; }
    const ExecutorKind& kind() const { return kind_; }
    const StepTimings& timings() const { return timings_; }
    const StepAccounting& accounting() const { return accounting_; }
    int guard_warnings() const { return guard_warnings_total_; }

    /**
     * Advances one step of size dt. step_index selects the sweep parity
     * (even forward, odd backward). t_after, when finite, becomes the
     * committed time; callers use it to land exactly on the end time.
     */
    StepResult step(double dt, unsigned long long step_index,
                    double t_after = std::numeric_limits<double>::quiet_NaN()) {
        if (!loaded_) {
            throw ConfigError("Stepper::step: no state loaded");
        }
        if (!(dt > 0.0) || !std::isfinite(dt)) {
            throw ConfigError("Stepper::step: dt must be positive and finite");
        }
        const double t_commit = std::isfinite(t_after) ? t_after : t_ + dt;
        const SweepDirection dir = sweep_for_step(step_index);

        StepResult res;
        res.dt_used = dt;

        switch (kind_.strategy) {
            case ExecutorKind::Strategy::naive:
            case ExecutorKind::Strategy::tiled:
                res = step_single(dt, dir, t_commit);
                break;
            case ExecutorKind::Strategy::decomposed:
                res = step_decomposed(dt, dir, t_commit);
                break;
        }

        // Commit.
        std::swap(cur_, plan_.smoothing ? aux_ : next_);
        t_ = t_commit;
        guard_warnings_total_ += res.guard_warnings;
        return res;
    }

private:
    using Clock = detail::Clock;

    StepResult step_single(double dt, SweepDirection dir, double t_commit) {
        const int ny = ctx_.spec.ny;
        const bool tiled = kind_.strategy == ExecutorKind::Strategy::tiled;
        StepResult res;
        res.dt_used = dt;
        StepTimings tm;
        StateBuf& candidate = plan_.smoothing ? aux_ : next_;

        for (Kernel k : plan_.kernels) {
            const auto t0 = Clock::now();
            switch (k) {
                case Kernel::ghost_fill_committed:
                    res.guard_warnings += detail::fill_ghosts(cur_, ctx_, 0, ny, true, true);
                    break;
                case Kernel::predictor:
                    // The tiled executor fuses K2-K4 per tile inside the
                    // corrector slot, recomputing ring predictor values
                    // redundantly from its own staged halos.
                    if (!tiled) {
                        detail::predictor_rows(cur_, star_, ctx_, dt, dir, 0, ny);
                    }
                    break;
                case Kernel::ghost_fill_star:
                    if (!tiled) {
                        res.guard_warnings += detail::fill_ghosts(star_, ctx_, 0, ny, true, true);
                    }
                    break;
                case Kernel::corrector: {
                    if (tiled) {
                        detail::tile_pass_rows(cur_, next_, ctx_, dt, dir, kind_.tile, 0, ny,
                                               t_commit, -1, ny);
                    } else {
                        detail::corrector_rows(cur_, star_, next_, ctx_, dt, dir, 0, ny,
                                               t_commit);
                    }
                    if (plan_.smoothing) {
                        const auto ts = Clock::now();
                        res.guard_warnings += detail::fill_ghosts(next_, ctx_, 0, ny, true, true);
                        detail::smooth_rows(next_, aux_, ctx_, 0, ny);
                        tm.smooth_seconds += detail::seconds_since(ts);
                    }
                    break;
                }
                case Kernel::stability_guard: {
                    const GuardReport guard =
                        detail::guard_rows_buf(candidate, ctx_, 0, ny, t_commit);
                    if (!guard.pass) {
                        throw InstabilityError("instability: " + guard.describe(), guard.i,
                                               guard.j, guard.t);
                    }
                    break;
                }
                case Kernel::wave_speed_reduce: {
                    long long bad = -1;
                    const double core = detail::min_dt_rows_buf(candidate, ctx_, 0, ny, &bad);
                    res.dt_next = finish_dt(core, bad, t_commit);
                    break;
                }
            }
            tm.kernel_seconds[static_cast<std::size_t>(k)] += detail::seconds_since(t0);
        }

        tm.kernel_seconds[static_cast<std::size_t>(Kernel::corrector)] -= tm.smooth_seconds;
        timings_ += tm;
        return res;
    }

    StepResult step_decomposed(double dt, SweepDirection dir, double t_commit) {
        const int ny = ctx_.spec.ny;
        const int nx = ctx_.spec.nx;
        const int halo = tile_halo_extent(HaloStage::committed);
        const std::size_t nw = bands_.size();
        StepResult res;
        res.dt_used = dt;

        struct BandOut {
            GuardReport guard;
            double dt_core = std::numeric_limits<double>::infinity();
            long long bad = -1;
            int warnings = 0;
            int redundant_star = 0;
            int redundant_corr = 0;
            StepTimings tm;
            std::exception_ptr err;
        };
        std::vector<BandOut> outs(nw);
        StateBuf& commit_buf = plan_.smoothing ? aux_ : next_;

        // Each worker runs the whole kernel plan on its extended band with no
        // mid-step communication: the up-front halo copy plus redundant
        // predictor (and, when smoothing, corrector) rows replace the
        // per-kernel exchanges.
        auto worker = [&](std::size_t w) {
            BandOut& o = outs[w];
            try {
                const RowBand own = bands_[w];
                const RowBand star_rows = detail::band_star_range(own, dir, plan_.smoothing, ny);
                const RowBand corr_rows = detail::band_corrector_range(own, plan_.smoothing, ny);
                const int re0 = std::max(own.j_begin - halo, 0);
                const int re1 = std::min(own.j_end + halo, ny);
                const bool tiled = kind_.inner == ExecutorKind::Inner::tiled;
                o.redundant_star = star_rows.rows() - own.rows();
                o.redundant_corr = corr_rows.rows() - own.rows();

                // Halo exchange: copy the committed extended band. Own rows
                // are staged along with the up-to-2 halo rows per side; only
                // the halo rows count as exchanged data.
                auto t0 = Clock::now();
                StateBuf cur_loc;
                cur_loc.reset(-1, re0 - 1, nx + 2, (re1 - re0) + 2);
                for (int j = re0; j < re1; ++j) {
                    for (int i = 0; i < nx; ++i) {
                        cur_loc.set(i, j, cur_.at(i, j));
                    }
                }
                o.tm.exchange_seconds = detail::seconds_since(t0);

                StateBuf star_loc;
                star_loc.reset(-1, star_rows.j_begin - 1, nx + 2, star_rows.rows() + 2);
                StateBuf corr_loc;  // scratch for the pre-smoothing corrector
                if (plan_.smoothing) {
                    corr_loc.reset(-1, corr_rows.j_begin - 1, nx + 2, corr_rows.rows() + 2);
                }
                StateBuf& corr_out = plan_.smoothing ? corr_loc : commit_buf;
                const RowBand corr_write = plan_.smoothing ? corr_rows : own;

                for (Kernel k : plan_.kernels) {
                    t0 = Clock::now();
                    switch (k) {
                        case Kernel::ghost_fill_committed:
                            // x ghosts for every staged row, y ghosts where
                            // the band touches the domain edge
                            o.warnings += detail::fill_ghosts(cur_loc, ctx_, re0, re1, re0 == 0,
                                                              re1 == ny);
                            break;
                        case Kernel::predictor:
                            if (!tiled) {
                                detail::predictor_rows(cur_loc, star_loc, ctx_, dt, dir,
                                                       star_rows.j_begin, star_rows.j_end);
                            }
                            break;
                        case Kernel::ghost_fill_star:
                            if (!tiled) {
                                o.warnings += detail::fill_ghosts(
                                    star_loc, ctx_, star_rows.j_begin, star_rows.j_end,
                                    star_rows.j_begin == 0, star_rows.j_end == ny);
                            }
                            break;
                        case Kernel::corrector: {
                            if (tiled) {
                                const int vlo = (re0 == 0) ? -1 : re0;
                                const int vhi = (re1 == ny) ? ny : re1 - 1;
                                detail::tile_pass_rows(cur_loc, corr_out, ctx_, dt, dir,
                                                       kind_.tile, corr_write.j_begin,
                                                       corr_write.j_end, t_commit, vlo, vhi);
                            } else {
                                detail::corrector_rows(cur_loc, star_loc, corr_out, ctx_, dt,
                                                       dir, corr_write.j_begin, corr_write.j_end,
                                                       t_commit);
                            }
                            if (plan_.smoothing) {
                                const auto ts = Clock::now();
                                o.warnings += detail::fill_ghosts(
                                    corr_loc, ctx_, corr_rows.j_begin, corr_rows.j_end,
                                    corr_rows.j_begin == 0, corr_rows.j_end == ny);
                                detail::smooth_rows(corr_loc, commit_buf, ctx_, own.j_begin,
                                                    own.j_end);
                                o.tm.smooth_seconds += detail::seconds_since(ts);
                            }
                            break;
                        }
                        case Kernel::stability_guard:
                            o.guard = detail::guard_rows_buf(commit_buf, ctx_, own.j_begin,
                                                             own.j_end, t_commit);
                            break;
                        case Kernel::wave_speed_reduce:
                            o.dt_core = detail::min_dt_rows_buf(commit_buf, ctx_, own.j_begin,
                                                                own.j_end, &o.bad);
                            break;
                    }
                    o.tm.kernel_seconds[static_cast<std::size_t>(k)] += detail::seconds_since(t0);
                }
                o.tm.kernel_seconds[static_cast<std::size_t>(Kernel::corrector)] -=
                    o.tm.smooth_seconds;
            } catch (...) {
                o.err = std::current_exception();
            }
        };

        if (nw == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(nw);
            for (std::size_t w = 0; w < nw; ++w) {
                pool.emplace_back(worker, w);
            }
            for (auto& th : pool) th.join();
        }

        // Deterministic merges, in band (row-major) order.
        for (const BandOut& o : outs) {
            if (o.err) std::rethrow_exception(o.err);
        }
        for (const BandOut& o : outs) {
            if (!o.guard.pass) {
                throw InstabilityError("instability: " + o.guard.describe(), o.guard.i, o.guard.j,
                                       o.guard.t);
            }
        }
        double core = std::numeric_limits<double>::infinity();
        long long bad = -1;
        for (const BandOut& o : outs) {
            core = std::min(core, o.dt_core);
            if (o.bad >= 0 && bad < 0) bad = o.bad;
        }
        res.dt_next = finish_dt(core, bad, t_commit);

        StepTimings tm;
        for (const BandOut& o : outs) {
            res.guard_warnings += o.warnings;
            for (std::size_t k = 0; k < tm.kernel_seconds.size(); ++k) {
                tm.kernel_seconds[k] = std::max(tm.kernel_seconds[k], o.tm.kernel_seconds[k]);
            }
            tm.smooth_seconds = std::max(tm.smooth_seconds, o.tm.smooth_seconds);
            tm.exchange_seconds = std::max(tm.exchange_seconds, o.tm.exchange_seconds);
        }
        int red_star = 0;
        int red_corr = 0;
        for (const BandOut& o : outs) {
            red_star += o.redundant_star;
            red_corr += o.redundant_corr;
        }
        accounting_.redundant_star_rows = red_star;
        accounting_.redundant_corrector_rows = red_corr;
        accounting_.halo_values_exchanged = halo_exchange_values(static_cast<int>(nw), nx);
        timings_ += tm;
        return res;
    }

    using StateBuf = detail::StateBuf;
    using DomainCtx = detail::DomainCtx;

    /// Collapse/instability checks for the K6 result; returns the raw
    /// next-step dt (no end-time clamp; run() applies that at use).
    double finish_dt(double core, long long bad, double t_commit) {
        if (bad >= 0) {
            const auto [bi, bj] = cell_coords(ctx_.spec, static_cast<std::size_t>(bad));
            throw InstabilityError("non-finite wave speed in dt reduction", bi, bj, t_commit);
        }
        const double dt_raw = std::min(ctx_.pol.cfl * core, ctx_.pol.dt_max);
        if (dt_raw < ctx_.pol.dt_min) {
            throw StepCollapseError("next step size " + std::to_string(dt_raw) +
                                        " collapsed below dt_min " +
                                        std::to_string(ctx_.pol.dt_min),
                                    dt_raw, t_commit);
        }
        return dt_raw;
    }

    ExecutorKind kind_;
    StepPlan plan_;
    DomainCtx ctx_;
    std::vector<RowBand> bands_;
    StateBuf cur_, star_, next_, aux_;
    double t_ = 0.0;
    bool loaded_ = false;
    StepTimings timings_;
    StepAccounting accounting_;
    int guard_warnings_total_ = 0;
};

/// Single-shot step: validates the input state, executes the plan once,
/// and returns the committed state. The committed result is bit-identical
/// across all ExecutorKind values.
inline StepOutput step(const FieldSet& fs, const ExecutorKind& exec, const StabilityPolicy& pol,
                       const PhysicsParams& phys, const BoundarySet& bounds, double dt,
                       unsigned long long step_index) {
    const GuardReport guard = stability_guard(fs, pol);
    if (!guard.pass) {
        throw InstabilityError("step precondition: " + guard.describe(), guard.i, guard.j,
                               guard.t);
    }
    Stepper stepper(fs.spec, phys, pol, bounds, exec);
    stepper.load(fs);
    StepOutput out;
    out.result = stepper.step(dt, step_index);
    out.committed = stepper.state();
    return out;
}

}  // namespace swe
