#include <catch2/catch.hpp>

#include <cstring>
#include <random>
#include <stdexcept>

#include "swe/grid.hpp"

using namespace swe;

TEST_CASE("cell_index maps row-major with x fastest", "[grid]") {
    const GridSpec big(201, 201, 1.0, 1.0);
    CHECK(cell_index(big, 0, 0) == 0);
    CHECK(cell_index(big, 200, 200) == 40400);  // last cell of the 40401-cell grid

    const GridSpec small(5, 4, 1.0, 1.0);
    CHECK(cell_index(small, 2, 3) == 17);  // 3*5 + 2

    CHECK_THROWS_AS(cell_index(small, 5, 0), std::out_of_range);
    CHECK_THROWS_AS(cell_index(small, 0, 4), std::out_of_range);
    CHECK_THROWS_AS(cell_index(small, -1, 0), std::out_of_range);
}

TEST_CASE("cell coordinates round-trip through the flat index", "[grid]") {
    const GridSpec spec(17, 9, 0.5, 2.0);
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> pick_i(0, spec.nx - 1);
    std::uniform_int_distribution<int> pick_j(0, spec.ny - 1);
    for (int trial = 0; trial < 200; ++trial) {
        const int i = pick_i(rng);
        const int j = pick_j(rng);
        const auto [ri, rj] = cell_coords(spec, cell_index(spec, i, j));
        REQUIRE(ri == i);
        REQUIRE(rj == j);
    }
}

TEST_CASE("GridSpec rejects degenerate dimensions", "[grid]") {
    CHECK_THROWS_AS(GridSpec(2, 5, 1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(GridSpec(5, 2, 1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(GridSpec(5, 5, 0.0, 1.0), ConfigError);
    CHECK_THROWS_AS(GridSpec(5, 5, 1.0, -2.0), ConfigError);
    CHECK_NOTHROW(GridSpec(3, 3, 1e-3, 1e3));
}

TEST_CASE("surface elevation is bed plus depth", "[grid]") {
    FieldSet fs(GridSpec(3, 3, 1.0, 1.0));
    fs.z[0] = 0.0;
    fs.h[0] = 1.0;
    fs.z[1] = 2.5;
    fs.h[1] = 0.5;
    fs.z[2] = -1.0;
    fs.h[2] = 1.0;
    CHECK(surface_elevation(fs, 0) == 1.0);
    CHECK(surface_elevation(fs, 1) == 3.0);
    CHECK(surface_elevation(fs, 2) == 0.0);

    // monotone in h for fixed z
    fs.h[1] = 0.6;
    CHECK(surface_elevation(fs, 1) > 3.0);
}

TEST_CASE("total_volume is dx*dy times the depth sum", "[grid]") {
    FieldSet fs(GridSpec(3, 3, 0.5, 0.5));
    for (std::size_t k = 0; k < fs.h.size(); ++k) fs.h[k] = static_cast<double>(k + 1);
    CHECK(total_volume(fs) == Approx(45.0 * 0.25).epsilon(1e-15));

    FieldSet dry(GridSpec(7, 5, 2.0, 3.0));
    CHECK(total_volume(dry) == 0.0);

    FieldSet unit(GridSpec(201, 201, 1.0, 1.0));
    std::fill(unit.h.begin(), unit.h.end(), 1.0);
    CHECK(total_volume(unit) == 40401.0);
}

TEST_CASE("total_volume is bit-reproducible", "[grid]") {
    FieldSet fs(GridSpec(33, 17, 0.7, 1.3));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> depth(0.1, 2.0);
    for (double& h : fs.h) h = depth(rng);
    const double a = total_volume(fs);
    const double b = total_volume(fs);
    CHECK(std::memcmp(&a, &b, sizeof a) == 0);
}

TEST_CASE("ghost_value mirrors walls with the normal momentum negated", "[grid]") {
    const CellVec interior{1.0, 0.3, 0.1};
    const CellVec g = ghost_value(Edge::west, BoundaryKind::wall(), interior, 0.0, 1e-6);
    CHECK(g == CellVec{1.0, -0.3, 0.1});

    const CellVec gn = ghost_value(Edge::north, BoundaryKind::wall(), interior, 0.0, 1e-6);
    CHECK(gn == CellVec{1.0, 0.3, -0.1});

    // mirror of mirror restores the original triple
    const CellVec gg = ghost_value(Edge::west, BoundaryKind::wall(), g, 0.0, 1e-6);
    CHECK(gg == interior);
}

TEST_CASE("ghost_value copies through transmissive edges", "[grid]") {
    const CellVec interior{2.0, 1.0, -1.0};
    for (Edge e : {Edge::north, Edge::south, Edge::east, Edge::west}) {
        CHECK(ghost_value(e, BoundaryKind::transmissive(), interior, 0.0, 1e-6) == interior);
    }
}

TEST_CASE("ghost_value maps inflow discharge into the domain", "[grid]") {
    const BoundaryKind in = BoundaryKind::inflow(0.5, 1.0);
    const CellVec any{3.0, -2.0, 4.0};
    CHECK(ghost_value(Edge::south, in, any, 0.0, 1e-6) == CellVec{1.0, 0.0, 0.5});
    CHECK(ghost_value(Edge::north, in, any, 0.0, 1e-6) == CellVec{1.0, 0.0, -0.5});
    CHECK(ghost_value(Edge::west, in, any, 0.0, 1e-6) == CellVec{1.0, 0.5, 0.0});
    CHECK(ghost_value(Edge::east, in, any, 0.0, 1e-6) == CellVec{1.0, -0.5, 0.0});
}

TEST_CASE("ghost_value pins fixed surface elevation and clamps dry outlets", "[grid]") {
    const CellVec interior{0.8, 0.2, 0.0};
    bool clamped = false;
    const CellVec g =
        ghost_value(Edge::east, BoundaryKind::fixed_eta(1.5), interior, 0.75, 1e-6, &clamped);
    CHECK(g == CellVec{0.75, 0.2, 0.0});
    CHECK_FALSE(clamped);

    const CellVec dry =
        ghost_value(Edge::east, BoundaryKind::fixed_eta(0.1), interior, 0.75, 1e-6, &clamped);
    CHECK(dry.h == 1e-6);
    CHECK(clamped);
}

TEST_CASE("boundary validation rejects dry inflow", "[grid]") {
    CHECK_THROWS_AS(validate_boundary(BoundaryKind::inflow(0.5, 1e-9), 1e-6, "west"),
                    ConfigError);
    CHECK_NOTHROW(validate_boundary(BoundaryKind::inflow(0.5, 1.0), 1e-6, "west"));
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(validate_boundary(BoundaryKind::fixed_eta(nan), 1e-6, "east"), ConfigError);
}
