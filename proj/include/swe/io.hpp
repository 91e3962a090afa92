#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "swe/errors.hpp"
#include "swe/grid.hpp"
#include "swe/scenarios.hpp"

namespace swe {

// ---------------------------------------------------------------------------
// SWS1 snapshot format
//
// Little-endian throughout, fixed-width types:
//   bytes  0..3   magic "SWS1"
//   bytes  4..7   u32 version = 1
//   bytes  8..11  u32 nx
//   bytes 12..15  u32 ny
//   bytes 16..55  f64 dx, dy, t, g, reserved (written 0)
//   then four row-major blocks of nx*ny f64: z, h, qx, qy
//   then zero or more 12-byte trailing records (u32 tag, f64 value);
//   readers skip unknown tags. Known: 1 = dt_next, 2 = step_index.
// ---------------------------------------------------------------------------

inline constexpr std::uint32_t snapshot_version = 1;
inline constexpr std::size_t snapshot_header_bytes = 16 + 5 * 8;
inline constexpr std::uint32_t snapshot_tag_dt_next = 1;
inline constexpr std::uint32_t snapshot_tag_step_index = 2;

/// File size of a snapshot with no trailing records.
constexpr std::size_t snapshot_size_bytes(std::size_t nx, std::size_t ny) {
    return snapshot_header_bytes + 4 * nx * ny * 8;
}

/// Optional resume data carried in trailing records.
struct SnapshotExtras {
    bool has_dt_next = false;
    double dt_next = 0.0;
    bool has_step_index = false;
    unsigned long long step_index = 0;
};

namespace io_detail {

inline void put_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

inline void put_f64(std::string& out, double d) {
    const std::uint64_t v = std::bit_cast<std::uint64_t>(d);
    for (int b = 0; b < 8; ++b) {
        out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
    }
}

inline std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

inline double get_f64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int b = 7; b >= 0; --b) {
        v = (v << 8) | p[b];
    }
    return std::bit_cast<double>(v);
}

inline std::string read_all(std::istream& is) {
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

/// Full 17-significant-digit decimal form (always round-trips).
inline std::string fmt_double(double d) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
}

/// Shortest decimal form that parses back to the identical double.
inline std::string fmt_double_short(double d) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, d);
        if (std::strtod(buf, nullptr) == d) break;
    }
    return buf;
}

}  // namespace io_detail

/// Serializes a state (plus g and optional resume records) to SWS1 bytes.
inline std::string snapshot_bytes(const FieldSet& fs, double g,
                                  const SnapshotExtras* extras = nullptr) {
    std::string out;
    const std::size_t cells = fs.spec.cell_count();
    out.reserve(snapshot_header_bytes + 4 * 8 * cells + 24);
    out += "SWS1";
    io_detail::put_u32(out, snapshot_version);
    io_detail::put_u32(out, static_cast<std::uint32_t>(fs.spec.nx));
    io_detail::put_u32(out, static_cast<std::uint32_t>(fs.spec.ny));
    io_detail::put_f64(out, fs.spec.dx);
    io_detail::put_f64(out, fs.spec.dy);
    io_detail::put_f64(out, fs.t);
    io_detail::put_f64(out, g);
    io_detail::put_f64(out, 0.0);
    for (const std::vector<double>* block : {&fs.z, &fs.h, &fs.qx, &fs.qy}) {
        for (double d : *block) {
            io_detail::put_f64(out, d);
        }
    }
    if (extras != nullptr) {
        if (extras->has_dt_next) {
            io_detail::put_u32(out, snapshot_tag_dt_next);
            io_detail::put_f64(out, extras->dt_next);
        }
        if (extras->has_step_index) {
            io_detail::put_u32(out, snapshot_tag_step_index);
            io_detail::put_f64(out, static_cast<double>(extras->step_index));
        }
    }
    return out;
}

/// Writes SWS1 bytes to a stream; returns the byte count written.
inline std::size_t write_snapshot(const FieldSet& fs, std::ostream& os, double g,
                                  const SnapshotExtras* extras = nullptr) {
    const std::string bytes = snapshot_bytes(fs, g, extras);
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!os) {
        throw IoError("write_snapshot: stream write failed");
    }
    return bytes.size();
}

inline std::size_t write_snapshot_file(const FieldSet& fs, const std::string& path, double g,
                                       const SnapshotExtras* extras = nullptr) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("write_snapshot: cannot open '" + path + "'");
    }
    return write_snapshot(fs, f, g, extras);
}

/// Parses SWS1 bytes. Distinct errors name the offending offset.
inline FieldSet parse_snapshot(const std::string& bytes, double* g_out = nullptr,
                               SnapshotExtras* extras = nullptr) {
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    if (bytes.size() < snapshot_header_bytes) {
        throw IoError("snapshot: truncated header, need " +
                      std::to_string(snapshot_header_bytes) + " bytes, have " +
                      std::to_string(bytes.size()));
    }
    if (std::memcmp(p, "SWS1", 4) != 0) {
        throw IoError("snapshot: bad magic at offset 0");
    }
    const std::uint32_t version = io_detail::get_u32(p + 4);
    if (version != snapshot_version) {
        throw IoError("snapshot: unsupported version " + std::to_string(version) +
                      " at offset 4");
    }
    const std::uint32_t nx = io_detail::get_u32(p + 8);
    const std::uint32_t ny = io_detail::get_u32(p + 12);
    const double dx = io_detail::get_f64(p + 16);
    const double dy = io_detail::get_f64(p + 24);
    const double t = io_detail::get_f64(p + 32);
    const double g = io_detail::get_f64(p + 40);

    GridSpec spec;
    try {
        spec = GridSpec(static_cast<int>(nx), static_cast<int>(ny), dx, dy);
    } catch (const ConfigError& e) {
        throw IoError(std::string("snapshot: invalid grid header: ") + e.what());
    }
    const std::size_t cells = spec.cell_count();
    const std::size_t payload_end = snapshot_header_bytes + 4 * 8 * cells;
    if (bytes.size() < payload_end) {
        throw IoError("snapshot: truncated payload, expected " + std::to_string(payload_end) +
                      " bytes, have " + std::to_string(bytes.size()));
    }

    FieldSet fs(spec);
    fs.t = t;
    std::size_t off = snapshot_header_bytes;
    for (std::vector<double>* block : {&fs.z, &fs.h, &fs.qx, &fs.qy}) {
        for (std::size_t k = 0; k < cells; ++k, off += 8) {
            (*block)[k] = io_detail::get_f64(p + off);
        }
    }

    while (off < bytes.size()) {
        if (bytes.size() - off < 12) {
            throw IoError("snapshot: truncated trailing record at offset " + std::to_string(off));
        }
        const std::uint32_t tag = io_detail::get_u32(p + off);
        const double value = io_detail::get_f64(p + off + 4);
        if (extras != nullptr) {
            if (tag == snapshot_tag_dt_next) {
                extras->has_dt_next = true;
                extras->dt_next = value;
            } else if (tag == snapshot_tag_step_index) {
                extras->has_step_index = true;
                extras->step_index = static_cast<unsigned long long>(value);
            }
        }
        off += 12;
    }

    if (g_out != nullptr) *g_out = g;
    return fs;
}

inline FieldSet read_snapshot(std::istream& is, double* g_out = nullptr,
                              SnapshotExtras* extras = nullptr) {
    return parse_snapshot(io_detail::read_all(is), g_out, extras);
}

inline FieldSet read_snapshot_file(const std::string& path, double* g_out = nullptr,
                                   SnapshotExtras* extras = nullptr) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("read_snapshot: cannot open '" + path + "'");
    }
    return read_snapshot(f, g_out, extras);
}

// ---------------------------------------------------------------------------
// CSV export (for plotting; all testing uses SWS1)
// ---------------------------------------------------------------------------

/// Writes `x,y,z,h,u,v,eta` rows in row-major order, one per cell, with
/// cell-center coordinates and 17-significant-digit values. Returns the
/// data row count.
inline std::size_t export_csv(const FieldSet& fs, std::ostream& os) {
    os << "x,y,z,h,u,v,eta\n";
    for (int j = 0; j < fs.spec.ny; ++j) {
        for (int i = 0; i < fs.spec.nx; ++i) {
            const std::size_t k = fs.idx(i, j);
            const double u = fs.qx[k] / fs.h[k];
            const double v = fs.qy[k] / fs.h[k];
            os << io_detail::fmt_double((i + 0.5) * fs.spec.dx) << ','
               << io_detail::fmt_double((j + 0.5) * fs.spec.dy) << ','
               << io_detail::fmt_double(fs.z[k]) << ',' << io_detail::fmt_double(fs.h[k]) << ','
               << io_detail::fmt_double(u) << ',' << io_detail::fmt_double(v) << ','
               << io_detail::fmt_double(surface_elevation(fs, k)) << '\n';
        }
    }
    if (!os) {
        throw IoError("export_csv: stream write failed");
    }
    return fs.spec.cell_count();
}

// ---------------------------------------------------------------------------
// Scenario config text
//
// Line-based: `[section]` headers, `key = value` pairs, `#` comments.
// Unknown sections and keys are rejected with their line number. Sections:
// grid, physics, policy, executor, boundaries, initial, run.
// ---------------------------------------------------------------------------

namespace io_detail {

struct Cursor {
    int line = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError("config line " + std::to_string(line) + ": " + msg);
    }
};

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& v, const Cursor& at) {
    const std::string t = trim(v);
    char* end = nullptr;
    const double d = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0') {
        at.fail("expected a number, got '" + v + "'");
    }
    return d;
}

inline long parse_int(const std::string& v, const Cursor& at) {
    const std::string t = trim(v);
    char* end = nullptr;
    const long n = std::strtol(t.c_str(), &end, 10);
    if (end == t.c_str() || *end != '\0') {
        at.fail("expected an integer, got '" + v + "'");
    }
    return n;
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

inline BoundaryKind parse_boundary(const std::string& value, const Cursor& at) {
    const std::vector<std::string> tok = split_ws(value);
    if (tok.empty()) at.fail("empty boundary value");
    if (tok[0] == "wall") {
        if (tok.size() != 1) at.fail("wall takes no parameters");
        return BoundaryKind::wall();
    }
    if (tok[0] == "transmissive") {
        if (tok.size() != 1) at.fail("transmissive takes no parameters");
        return BoundaryKind::transmissive();
    }
    if (tok[0] == "inflow") {
        if (tok.size() != 3) at.fail("inflow needs: inflow Q_N H_IN");
        return BoundaryKind::inflow(parse_double(tok[1], at), parse_double(tok[2], at));
    }
    if (tok[0] == "fixed_eta") {
        if (tok.size() != 2) at.fail("fixed_eta needs: fixed_eta ETA");
        return BoundaryKind::fixed_eta(parse_double(tok[1], at));
    }
    at.fail("unknown boundary kind '" + tok[0] + "'");
}

inline std::string emit_boundary(const BoundaryKind& bk) {
    switch (bk.type) {
        case BoundaryKind::Type::reflective_wall: return "wall";
        case BoundaryKind::Type::transmissive: return "transmissive";
        case BoundaryKind::Type::inflow_discharge:
            return "inflow " + fmt_double_short(bk.q_n) + " " + fmt_double_short(bk.h_in);
        case BoundaryKind::Type::fixed_elevation:
            return "fixed_eta " + fmt_double_short(bk.eta_out);
    }
    return "wall";
}

}  // namespace io_detail

/**
 * Parses config text into a fully-resolved scenario; omitted keys keep the
 * documented defaults. Errors carry the offending line number.
 */
inline ScenarioConfig parse_config(const std::string& text) {
    using io_detail::Cursor;
    ScenarioConfig sc;
    // GridSpec validates on construction, so stage raw values.
    int nx = sc.grid.nx, ny = sc.grid.ny;
    double dx = sc.grid.dx, dy = sc.grid.dy;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    Cursor at;

    while (std::getline(in, raw)) {
        ++at.line;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        const std::string line = io_detail::trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') at.fail("malformed section header");
            section = io_detail::trim(line.substr(1, line.size() - 2));
            static const char* known[] = {"grid",       "physics", "policy", "executor",
                                          "boundaries", "initial", "run"};
            bool ok = false;
            for (const char* s : known) ok = ok || section == s;
            if (!ok) at.fail("unknown section '" + section + "'");
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) at.fail("expected 'key = value'");
        const std::string key = io_detail::trim(line.substr(0, eq));
        const std::string value = io_detail::trim(line.substr(eq + 1));
        if (section.empty()) at.fail("key '" + key + "' outside any section");

        if (section == "grid") {
            if (key == "nx") nx = static_cast<int>(io_detail::parse_int(value, at));
            else if (key == "ny") ny = static_cast<int>(io_detail::parse_int(value, at));
            else if (key == "dx") dx = io_detail::parse_double(value, at);
            else if (key == "dy") dy = io_detail::parse_double(value, at);
            else at.fail("unknown key '" + key + "' in [grid]");
        } else if (section == "physics") {
            if (key == "g") sc.physics.g = io_detail::parse_double(value, at);
            else if (key == "manning_n") sc.physics.manning_n = io_detail::parse_double(value, at);
            else if (key == "nu_art") {
                sc.physics.nu_art = io_detail::parse_double(value, at);
                if (!(sc.physics.nu_art >= 0.0) || !(sc.physics.nu_art < 0.5)) {
                    at.fail("nu_art must lie in [0, 0.5)");
                }
            } else at.fail("unknown key '" + key + "' in [physics]");
        } else if (section == "policy") {
            if (key == "cfl") {
                sc.policy.cfl = io_detail::parse_double(value, at);
                if (!(sc.policy.cfl > 0.0) || !(sc.policy.cfl <= 1.0)) {
                    at.fail("cfl must lie in (0, 1]");
                }
            } else if (key == "dt_max") sc.policy.dt_max = io_detail::parse_double(value, at);
            else if (key == "dt_min") sc.policy.dt_min = io_detail::parse_double(value, at);
            else if (key == "h_min") sc.policy.h_min = io_detail::parse_double(value, at);
            else at.fail("unknown key '" + key + "' in [policy]");
        } else if (section == "executor") {
            if (key == "kind") {
                if (value == "naive") sc.executor.strategy = ExecutorKind::Strategy::naive;
                else if (value == "tiled") sc.executor.strategy = ExecutorKind::Strategy::tiled;
                else if (value == "decomposed")
                    sc.executor.strategy = ExecutorKind::Strategy::decomposed;
                else at.fail("unknown executor kind '" + value + "'");
            } else if (key == "tile") {
                sc.executor.tile = static_cast<int>(io_detail::parse_int(value, at));
            } else if (key == "workers") {
                sc.executor.workers = static_cast<int>(io_detail::parse_int(value, at));
            } else if (key == "inner") {
                if (value == "naive") sc.executor.inner = ExecutorKind::Inner::naive;
                else if (value == "tiled") sc.executor.inner = ExecutorKind::Inner::tiled;
                else at.fail("inner must be naive or tiled");
            } else at.fail("unknown key '" + key + "' in [executor]");
        } else if (section == "boundaries") {
            if (key == "north") sc.boundaries.north = io_detail::parse_boundary(value, at);
            else if (key == "south") sc.boundaries.south = io_detail::parse_boundary(value, at);
            else if (key == "east") sc.boundaries.east = io_detail::parse_boundary(value, at);
            else if (key == "west") sc.boundaries.west = io_detail::parse_boundary(value, at);
            else at.fail("unknown key '" + key + "' in [boundaries]");
        } else if (section == "initial") {
            if (key == "kind") {
                if (value == "flat_pool") sc.initial.kind = InitialCondition::Kind::flat_pool;
                else if (value == "drops") sc.initial.kind = InitialCondition::Kind::drops;
                else if (value == "channel_slope")
                    sc.initial.kind = InitialCondition::Kind::channel_slope;
                else if (value == "vortex") sc.initial.kind = InitialCondition::Kind::vortex;
                else if (value == "dam_break") sc.initial.kind = InitialCondition::Kind::dam_break;
                else at.fail("unknown initial kind '" + value + "'");
            } else if (key == "depth") sc.initial.depth = io_detail::parse_double(value, at);
            else if (key == "drop") {
                const auto tok = io_detail::split_ws(value);
                if (tok.size() != 4) at.fail("drop needs: drop CX CY RADIUS AMPLITUDE");
                sc.initial.drops.push_back({io_detail::parse_double(tok[0], at),
                                            io_detail::parse_double(tok[1], at),
                                            io_detail::parse_double(tok[2], at),
                                            io_detail::parse_double(tok[3], at)});
            } else if (key == "slope") sc.initial.slope = io_detail::parse_double(value, at);
            else if (key == "center_x") sc.initial.center_x = io_detail::parse_double(value, at);
            else if (key == "center_y") sc.initial.center_y = io_detail::parse_double(value, at);
            else if (key == "v_peak") sc.initial.v_peak = io_detail::parse_double(value, at);
            else if (key == "core_radius")
                sc.initial.core_radius = io_detail::parse_double(value, at);
            else if (key == "split_x") sc.initial.split_x = io_detail::parse_double(value, at);
            else if (key == "h_left") sc.initial.h_left = io_detail::parse_double(value, at);
            else if (key == "h_right") sc.initial.h_right = io_detail::parse_double(value, at);
            else at.fail("unknown key '" + key + "' in [initial]");
        } else if (section == "run") {
            if (key == "name") sc.name = value;
            else if (key == "t_end") sc.t_end = io_detail::parse_double(value, at);
            else if (key == "snapshot_every")
                sc.snapshot_every = io_detail::parse_double(value, at);
            else if (key == "out_dir") sc.out_dir = value;
            else at.fail("unknown key '" + key + "' in [run]");
        }
    }

    sc.grid = GridSpec(nx, ny, dx, dy);
    validate_scenario(sc);
    return sc;
}

/// Emits config text that parse_config() round-trips to an equal scenario.
inline std::string emit_config(const ScenarioConfig& sc) {
    using io_detail::fmt_double_short;
    std::ostringstream os;
    os << "# scenario: " << sc.name << "\n";
    os << "# parameters are this implementation's reconstruction of the named dataset\n";
    os << "[grid]\n";
    os << "nx = " << sc.grid.nx << "\n";
    os << "ny = " << sc.grid.ny << "\n";
    os << "dx = " << fmt_double_short(sc.grid.dx) << "\n";
    os << "dy = " << fmt_double_short(sc.grid.dy) << "\n";
    os << "[physics]\n";
    os << "g = " << fmt_double_short(sc.physics.g) << "\n";
    os << "manning_n = " << fmt_double_short(sc.physics.manning_n) << "\n";
    os << "nu_art = " << fmt_double_short(sc.physics.nu_art) << "\n";
    os << "[policy]\n";
    os << "cfl = " << fmt_double_short(sc.policy.cfl) << "\n";
    os << "dt_max = " << fmt_double_short(sc.policy.dt_max) << "\n";
    os << "dt_min = " << fmt_double_short(sc.policy.dt_min) << "\n";
    os << "h_min = " << fmt_double_short(sc.policy.h_min) << "\n";
    os << "[executor]\n";
    switch (sc.executor.strategy) {
        case ExecutorKind::Strategy::naive: os << "kind = naive\n"; break;
        case ExecutorKind::Strategy::tiled: os << "kind = tiled\n"; break;
        case ExecutorKind::Strategy::decomposed: os << "kind = decomposed\n"; break;
    }
    os << "tile = " << sc.executor.tile << "\n";
    os << "workers = " << sc.executor.workers << "\n";
    os << "inner = " << (sc.executor.inner == ExecutorKind::Inner::tiled ? "tiled" : "naive")
       << "\n";
    os << "[boundaries]\n";
    os << "north = " << io_detail::emit_boundary(sc.boundaries.north) << "\n";
    os << "south = " << io_detail::emit_boundary(sc.boundaries.south) << "\n";
    os << "east = " << io_detail::emit_boundary(sc.boundaries.east) << "\n";
    os << "west = " << io_detail::emit_boundary(sc.boundaries.west) << "\n";
    os << "[initial]\n";
    os << "kind = " << initial_kind_name(sc.initial.kind) << "\n";
    os << "depth = " << fmt_double_short(sc.initial.depth) << "\n";
    switch (sc.initial.kind) {
        case InitialCondition::Kind::flat_pool:
            break;
        case InitialCondition::Kind::drops:
            for (const auto& dr : sc.initial.drops) {
                os << "drop = " << fmt_double_short(dr.cx) << " " << fmt_double_short(dr.cy) << " "
                   << fmt_double_short(dr.radius) << " " << fmt_double_short(dr.amplitude) << "\n";
            }
            break;
        case InitialCondition::Kind::channel_slope:
            os << "slope = " << fmt_double_short(sc.initial.slope) << "\n";
            break;
        case InitialCondition::Kind::vortex:
            os << "center_x = " << fmt_double_short(sc.initial.center_x) << "\n";
            os << "center_y = " << fmt_double_short(sc.initial.center_y) << "\n";
            os << "v_peak = " << fmt_double_short(sc.initial.v_peak) << "\n";
            os << "core_radius = " << fmt_double_short(sc.initial.core_radius) << "\n";
            break;
        case InitialCondition::Kind::dam_break:
            os << "split_x = " << fmt_double_short(sc.initial.split_x) << "\n";
            os << "h_left = " << fmt_double_short(sc.initial.h_left) << "\n";
            os << "h_right = " << fmt_double_short(sc.initial.h_right) << "\n";
            break;
    }
    os << "[run]\n";
    os << "name = " << sc.name << "\n";
    os << "t_end = " << fmt_double_short(sc.t_end) << "\n";
    os << "snapshot_every = " << fmt_double_short(sc.snapshot_every) << "\n";
    os << "out_dir = " << sc.out_dir << "\n";
    return os.str();
}

/// Applies a `section.key=value` override (CLI --set) to config text terms.
inline void apply_override(ScenarioConfig& sc, const std::string& spec_str) {
    const std::size_t eq = spec_str.find('=');
    const std::size_t dot = spec_str.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
        throw ConfigError("--set expects section.key=value, got '" + spec_str + "'");
    }
    const std::string section = spec_str.substr(0, dot);
    const std::string key = spec_str.substr(dot + 1, eq - dot - 1);
    const std::string value = spec_str.substr(eq + 1);
    // Route through the parser so overrides obey the same validation.
    std::string text = emit_config(sc);
    text += "[" + section + "]\n" + key + " = " + value + "\n";
    sc = parse_config(text);
}

}  // namespace swe
