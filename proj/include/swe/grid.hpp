#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "swe/errors.hpp"

namespace swe {

/**
 * @brief Uniform structured grid: cell counts and cell sizes.
 *
 * The domain is nx-by-ny cells, row-major with x fastest. At least a
 * 3x3 grid is required so every interior stencil has one neighbor on
 * each side.
 */
struct GridSpec {
    int nx = 0;
    int ny = 0;
    double dx = 1.0;
    double dy = 1.0;

    GridSpec() = default;

    GridSpec(int nx_in, int ny_in, double dx_in, double dy_in)
        : nx(nx_in), ny(ny_in), dx(dx_in), dy(dy_in) {
        if (nx < 3 || ny < 3) {
            throw ConfigError("GridSpec: nx and ny must be at least 3, got " +
                              std::to_string(nx) + "x" + std::to_string(ny));
        }
        if (!(dx > 0.0) || !(dy > 0.0) || !std::isfinite(dx) || !std::isfinite(dy)) {
            throw ConfigError("GridSpec: dx and dy must be positive and finite");
        }
    }

    std::size_t cell_count() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }

    bool operator==(const GridSpec&) const = default;
};

/// Flat index of cell (i, j); layout contract is index = j*nx + i.
inline std::size_t cell_index(const GridSpec& spec, int i, int j) {
    if (i < 0 || i >= spec.nx || j < 0 || j >= spec.ny) {
        throw std::out_of_range("cell_index: (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") outside " + std::to_string(spec.nx) + "x" + std::to_string(spec.ny));
    }
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(spec.nx) + static_cast<std::size_t>(i);
}

/// Inverse of cell_index.
inline std::pair<int, int> cell_coords(const GridSpec& spec, std::size_t idx) {
    if (idx >= spec.cell_count()) {
        throw std::out_of_range("cell_coords: index " + std::to_string(idx) + " outside grid");
    }
    const int j = static_cast<int>(idx / static_cast<std::size_t>(spec.nx));
    const int i = static_cast<int>(idx % static_cast<std::size_t>(spec.nx));
    return {i, j};
}

/**
 * @brief Full simulation state on a grid.
 *
 * Conservative variables on a collocated grid: depth h, momenta qx = h*u
 * and qy = h*v, over bed elevation z. All arrays are nx*ny, row-major
 * (x fastest). Water-surface elevation and velocities are derived views.
 *
 * Between time steps a FieldSet is immutable-once-published: executors
 * mutate only their own scratch buffers and commit by replacement.
 */
struct FieldSet {
    GridSpec spec;
    std::vector<double> z;   ///< bed elevation [m]
    std::vector<double> h;   ///< water depth [m]
    std::vector<double> qx;  ///< x-momentum h*u [m^2/s]
    std::vector<double> qy;  ///< y-momentum h*v [m^2/s]
    double t = 0.0;          ///< simulation time [s]

    FieldSet() = default;

    explicit FieldSet(const GridSpec& s)
        : spec(s),
          z(s.cell_count(), 0.0),
          h(s.cell_count(), 0.0),
          qx(s.cell_count(), 0.0),
          qy(s.cell_count(), 0.0) {}

    std::size_t idx(int i, int j) const { return cell_index(spec, i, j); }
};

/// Water-surface elevation eta = z + h at a flat index.
inline double surface_elevation(const FieldSet& fs, std::size_t idx) {
    return fs.z.at(idx) + fs.h.at(idx);
}

/// Total water volume dx*dy*sum(h), accumulated in fixed row-major order
/// so repeated calls on the same state are bit-identical.
inline double total_volume(const FieldSet& fs) {
    double sum = 0.0;
    for (std::size_t k = 0; k < fs.h.size(); ++k) {
        sum += fs.h[k];
    }
    return fs.spec.dx * fs.spec.dy * sum;
}

/// Domain edges, named by compass direction. North is the +y side.
enum class Edge { north, south, east, west };

inline const char* edge_name(Edge e) {
    switch (e) {
        case Edge::north: return "north";
        case Edge::south: return "south";
        case Edge::east: return "east";
        case Edge::west: return "west";
    }
    return "?";
}

/**
 * @brief Boundary condition assignable per edge.
 *
 * - ReflectiveWall: slip wall; ghost mirrors the interior cell with the
 *   edge-normal momentum negated.
 * - Transmissive: zero-gradient outflow; ghost copies the interior cell.
 * - InflowDischarge: prescribed inflow per unit width q_n (positive means
 *   into the domain on every edge) at depth h_in.
 * - FixedElevation: prescribed water-surface elevation; ghost depth is
 *   eta_out minus the local bed, clamped to at least h_min.
 */
struct BoundaryKind {
    enum class Type { reflective_wall, transmissive, inflow_discharge, fixed_elevation };

    Type type = Type::reflective_wall;
    double q_n = 0.0;      ///< inflow per unit width [m^2/s], inflow_discharge only
    double h_in = 0.0;     ///< inflow depth [m], inflow_discharge only
    double eta_out = 0.0;  ///< surface elevation [m], fixed_elevation only

    static BoundaryKind wall() { return {}; }
    static BoundaryKind transmissive() { return {Type::transmissive, 0.0, 0.0, 0.0}; }
    static BoundaryKind inflow(double q_n_in, double h_in_in) {
        return {Type::inflow_discharge, q_n_in, h_in_in, 0.0};
    }
    static BoundaryKind fixed_eta(double eta) { return {Type::fixed_elevation, 0.0, 0.0, eta}; }

    bool operator==(const BoundaryKind&) const = default;
};

/// Boundary condition for each of the four edges.
struct BoundarySet {
    BoundaryKind north;
    BoundaryKind south;
    BoundaryKind east;
    BoundaryKind west;

    const BoundaryKind& at(Edge e) const {
        switch (e) {
            case Edge::north: return north;
            case Edge::south: return south;
            case Edge::east: return east;
            case Edge::west: return west;
        }
        throw std::logic_error("BoundarySet::at");
    }

    BoundaryKind& at(Edge e) {
        return const_cast<BoundaryKind&>(static_cast<const BoundarySet*>(this)->at(e));
    }

    static BoundarySet all(BoundaryKind bk) { return {bk, bk, bk, bk}; }

    bool operator==(const BoundarySet&) const = default;
};

/// Validates an inflow/fixed-elevation boundary against the dry threshold.
inline void validate_boundary(const BoundaryKind& bk, double h_min, const std::string& where) {
    switch (bk.type) {
        case BoundaryKind::Type::inflow_discharge:
            if (!(bk.h_in >= h_min) || !std::isfinite(bk.q_n)) {
                throw ConfigError(where + ": inflow requires finite q_n and h_in >= h_min");
            }
            break;
        case BoundaryKind::Type::fixed_elevation:
            if (!std::isfinite(bk.eta_out)) {
                throw ConfigError(where + ": fixed elevation must be finite");
            }
            break;
        default:
            break;
    }
}

/// One (h, qx, qy) triple; also used for flux and source values of the
/// three conserved equations.
struct CellVec {
    double h = 0.0;
    double qx = 0.0;
    double qy = 0.0;

    bool operator==(const CellVec&) const = default;
};

inline CellVec operator+(const CellVec& a, const CellVec& b) {
    return {a.h + b.h, a.qx + b.qx, a.qy + b.qy};
}

inline CellVec operator-(const CellVec& a, const CellVec& b) {
    return {a.h - b.h, a.qx - b.qx, a.qy - b.qy};
}

inline CellVec operator*(double s, const CellVec& a) {
    return {s * a.h, s * a.qx, s * a.qy};
}

/// Prescribed state of an InflowDischarge boundary: depth h_in carrying
/// q_n per unit width into the domain, no tangential momentum.
inline CellVec inflow_state(Edge edge, const BoundaryKind& bk) {
    switch (edge) {
        case Edge::west: return {bk.h_in, bk.q_n, 0.0};
        case Edge::east: return {bk.h_in, -bk.q_n, 0.0};
        case Edge::south: return {bk.h_in, 0.0, bk.q_n};
        case Edge::north: return {bk.h_in, 0.0, -bk.q_n};
    }
    throw std::logic_error("inflow_state: bad edge");
}

/**
 * @brief Ghost-cell value for an interior cell adjacent to a domain edge.
 *
 * @param edge        which domain edge the ghost lies beyond
 * @param bk          boundary condition on that edge
 * @param interior    state of the adjacent interior cell
 * @param z_interior  bed elevation of the adjacent interior cell (the bed
 *                    is extended flat across every edge)
 * @param h_min       dry threshold used by the FixedElevation clamp
 * @param clamped     optional out-flag, set when FixedElevation had to
 *                    clamp the ghost depth up to h_min (reported once per
 *                    run as a warning diagnostic)
 */
inline CellVec ghost_value(Edge edge, const BoundaryKind& bk, const CellVec& interior,
                           double z_interior, double h_min, bool* clamped = nullptr) {
    switch (bk.type) {
        case BoundaryKind::Type::reflective_wall: {
            const bool x_edge = (edge == Edge::east || edge == Edge::west);
            return x_edge ? CellVec{interior.h, -interior.qx, interior.qy}
                          : CellVec{interior.h, interior.qx, -interior.qy};
        }
        case BoundaryKind::Type::transmissive:
            return interior;
        case BoundaryKind::Type::inflow_discharge:
            // q_n > 0 always means flow into the domain; map to the axis sign.
            return inflow_state(edge, bk);
        case BoundaryKind::Type::fixed_elevation: {
            double h_ghost = bk.eta_out - z_interior;
            if (h_ghost < h_min) {
                h_ghost = h_min;
                if (clamped != nullptr) *clamped = true;
            }
            return {h_ghost, interior.qx, interior.qy};
        }
    }
    throw std::logic_error("ghost_value: bad boundary kind");
}

}  // namespace swe
