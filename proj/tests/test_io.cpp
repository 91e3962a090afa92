#include <catch2/catch.hpp>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "swe/io.hpp"
#include "swe/run.hpp"

using namespace swe;

namespace {

FieldSet random_state(int nx, int ny, std::uint64_t seed) {
    FieldSet fs(GridSpec(nx, ny, 0.5, 2.0));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dh(0.1, 3.0);
    std::uniform_real_distribution<double> dq(-1.0, 1.0);
    for (std::size_t k = 0; k < fs.h.size(); ++k) {
        fs.z[k] = dq(rng);
        fs.h[k] = dh(rng);
        fs.qx[k] = dq(rng);
        fs.qy[k] = dq(rng);
    }
    fs.t = 12.75;
    return fs;
}

}  // namespace

TEST_CASE("snapshot sizes follow the header arithmetic", "[io]") {
    CHECK(snapshot_size_bytes(2, 2) == 184);  // 16 + 40 + 4*4*8
    CHECK(snapshot_size_bytes(201, 201) == 56 + 4 * 40401 * 8);

    const FieldSet fs = random_state(5, 4, 1);
    const std::string bytes = snapshot_bytes(fs, 9.81);
    CHECK(bytes.size() == snapshot_size_bytes(5, 4));
}

TEST_CASE("snapshot round trip is bit-exact", "[io]") {
    const FieldSet fs = random_state(7, 9, 2);
    SnapshotExtras extras;
    extras.has_dt_next = true;
    extras.dt_next = 0.03125;
    extras.has_step_index = true;
    extras.step_index = 12345;

    const std::string bytes = snapshot_bytes(fs, 9.81, &extras);
    CHECK(bytes.size() == snapshot_size_bytes(7, 9) + 2 * 12);

    double g = 0.0;
    SnapshotExtras back;
    const FieldSet rt = parse_snapshot(bytes, &g, &back);
    CHECK(rt.spec == fs.spec);
    CHECK(rt.z == fs.z);
    CHECK(rt.h == fs.h);
    CHECK(rt.qx == fs.qx);
    CHECK(rt.qy == fs.qy);
    CHECK(rt.t == fs.t);
    CHECK(g == 9.81);
    CHECK(back.has_dt_next);
    CHECK(back.dt_next == 0.03125);
    CHECK(back.has_step_index);
    CHECK(back.step_index == 12345);
}

TEST_CASE("snapshot parser names each failure", "[io]") {
    const FieldSet fs = random_state(5, 5, 3);
    std::string bytes = snapshot_bytes(fs, 9.81);

    std::string bad_magic = bytes;
    bad_magic[0] = 'X';
    CHECK_THROWS_WITH(parse_snapshot(bad_magic), Catch::Contains("magic"));

    std::string bad_version = bytes;
    bad_version[4] = 9;
    CHECK_THROWS_WITH(parse_snapshot(bad_version), Catch::Contains("version"));

    const std::string truncated = bytes.substr(0, bytes.size() - 13);
    CHECK_THROWS_WITH(parse_snapshot(truncated),
                      Catch::Contains("truncated") && Catch::Contains("expected"));

    std::string tiny = bytes.substr(0, 20);
    CHECK_THROWS_WITH(parse_snapshot(tiny), Catch::Contains("header"));

    // partial trailing record
    std::string ragged = bytes + std::string(5, '\0');
    CHECK_THROWS_WITH(parse_snapshot(ragged), Catch::Contains("trailing"));
}

TEST_CASE("unknown trailing records are skipped", "[io]") {
    const FieldSet fs = random_state(5, 5, 4);
    std::string bytes = snapshot_bytes(fs, 9.81);
    // append tag 99 with an arbitrary payload
    bytes.push_back(99);
    bytes.append(3, '\0');
    bytes.append(8, '\x7f');
    SnapshotExtras extras;
    CHECK_NOTHROW(parse_snapshot(bytes, nullptr, &extras));
    CHECK_FALSE(extras.has_dt_next);
}

TEST_CASE("snapshot file round trip", "[io]") {
    const auto dir = std::filesystem::temp_directory_path() / "swe_io_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "state.sws").string();

    const FieldSet fs = random_state(6, 6, 5);
    const std::size_t n = write_snapshot_file(fs, path, 9.81);
    CHECK(n == std::filesystem::file_size(path));
    const FieldSet rt = read_snapshot_file(path);
    CHECK(rt.h == fs.h);

    CHECK_THROWS_AS(read_snapshot_file((dir / "missing.sws").string()), IoError);
}

TEST_CASE("csv export emits one row per cell with derived velocities", "[io]") {
    FieldSet fs(GridSpec(3, 3, 1.0, 1.0));
    std::fill(fs.h.begin(), fs.h.end(), 2.0);
    fs.qx[4] = 1.0;

    std::ostringstream os;
    const std::size_t rows = export_csv(fs, os);
    CHECK(rows == 9);

    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,y,z,h,u,v,eta");
    int data_rows = 0;
    while (std::getline(in, line)) ++data_rows;
    CHECK(data_rows == 9);

    // still-water columns print exactly zero
    CHECK(os.str().find(",2,0,0,2\n") != std::string::npos);

    // the printed depth re-parses bit-exactly
    FieldSet noisy = random_state(4, 3, 6);
    std::ostringstream os2;
    export_csv(noisy, os2);
    std::istringstream in2(os2.str());
    std::getline(in2, line);  // header
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 4; ++i) {
            REQUIRE(std::getline(in2, line));
            // h is the fourth comma-separated field
            std::size_t pos = 0;
            for (int f = 0; f < 3; ++f) pos = line.find(',', pos) + 1;
            const double h = std::strtod(line.c_str() + pos, nullptr);
            REQUIRE(h == noisy.h[noisy.idx(i, j)]);
        }
    }
}

TEST_CASE("a run-section-only config resolves to the documented defaults", "[io]") {
    const ScenarioConfig sc = parse_config("[run]\nt_end = 2.5\n");
    CHECK(sc.grid == GridSpec(65, 65, 1.0, 1.0));
    CHECK(sc.physics == PhysicsParams{});
    CHECK(sc.policy == StabilityPolicy{});
    CHECK(sc.executor == ExecutorKind::naive());
    CHECK(sc.boundaries == BoundarySet::all(BoundaryKind::wall()));
    CHECK(sc.initial.kind == InitialCondition::Kind::flat_pool);
    CHECK(sc.t_end == 2.5);
    CHECK(sc.snapshot_every == 0.0);
    CHECK(sc.out_dir == "out");
}

TEST_CASE("config round-trips through emit and parse", "[io]") {
    for (const char* name :
         {"five-drops", "inlet-flood", "channel-flood", "vortex", "dam-break", "still-water"}) {
        ScenarioConfig sc = scenario_by_name(name, 48);
        sc.executor = ExecutorKind::decomposed(3, ExecutorKind::Inner::tiled, 8);
        sc.snapshot_every = 1.25;
        INFO(name);
        CHECK(parse_config(emit_config(sc)) == sc);
    }
}

TEST_CASE("randomized configs round-trip bit-exactly", "[io]") {
    std::mt19937_64 rng(314159);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto awkward = [&](double lo, double hi) {
        // values with long decimal expansions exercise the formatter
        return lo + (hi - lo) * u01(rng);
    };
    for (int trial = 0; trial < 50; ++trial) {
        ScenarioConfig sc;
        sc.name = "rt-" + std::to_string(trial);
        sc.grid = GridSpec(3 + static_cast<int>(u01(rng) * 40), 3 + static_cast<int>(u01(rng) * 40),
                           awkward(1e-3, 1e3), awkward(1e-3, 1e3));
        sc.physics.g = awkward(0.1, 30.0);
        sc.physics.manning_n = awkward(0.0, 0.2);
        sc.physics.nu_art = awkward(0.0, 0.49);
        sc.policy.cfl = awkward(0.01, 1.0);
        sc.policy.dt_min = awkward(1e-12, 1e-9);
        sc.policy.dt_max = trial % 3 == 0 ? std::numeric_limits<double>::infinity()
                                          : awkward(1e-3, 1e3);
        sc.policy.h_min = awkward(1e-9, 1e-4);
        sc.executor = trial % 2 == 0 ? ExecutorKind::tiled(4 + trial)
                                     : ExecutorKind::decomposed(1 + trial % 8);
        sc.boundaries.north = BoundaryKind::inflow(awkward(-1.0, 1.0), awkward(1e-3, 2.0));
        sc.boundaries.east = BoundaryKind::fixed_eta(awkward(-5.0, 5.0));
        sc.boundaries.south = BoundaryKind::transmissive();
        sc.initial.kind = InitialCondition::Kind::drops;
        sc.initial.depth = awkward(0.1, 3.0);
        for (int d = 0; d < trial % 4; ++d) {
            sc.initial.drops.push_back(
                {awkward(0.0, 40.0), awkward(0.0, 40.0), awkward(0.5, 8.0), awkward(0.0, 0.2)});
        }
        sc.t_end = awkward(0.0, 1e4);
        sc.snapshot_every = awkward(0.0, 10.0);
        sc.out_dir = "dir_" + std::to_string(trial);
        INFO(emit_config(sc));
        REQUIRE(parse_config(emit_config(sc)) == sc);
    }
}

TEST_CASE("the committed five-drops sample config parses to 40401 cells", "[io]") {
    std::ifstream f("configs/five_drops_201.cfg");
    if (!f) {
        f.open("../configs/five_drops_201.cfg");
    }
    REQUIRE(f);
    std::ostringstream ss;
    ss << f.rdbuf();
    const ScenarioConfig sc = parse_config(ss.str());
    CHECK(sc.grid.cell_count() == 40401);
    CHECK(sc.t_end == 100.0);
    CHECK(sc.initial.drops.size() == 5);
}

TEST_CASE("config errors carry line numbers", "[io]") {
    CHECK_THROWS_WITH(parse_config("[policy]\ncfl = 1.5\n"),
                      Catch::Contains("line 2") && Catch::Contains("cfl"));
    CHECK_THROWS_WITH(parse_config("[grid]\nnx = 5\nnx 7\n"), Catch::Contains("line 3"));
    CHECK_THROWS_WITH(parse_config("[grid]\nbogus = 1\n"),
                      Catch::Contains("line 2") && Catch::Contains("bogus"));
    CHECK_THROWS_WITH(parse_config("[nonsense]\n"), Catch::Contains("unknown section"));
    CHECK_THROWS_WITH(parse_config("key = 1\n"), Catch::Contains("outside any section"));
    CHECK_THROWS_WITH(parse_config("[physics]\ng = fast\n"), Catch::Contains("line 2"));
    // dimension-level validation still applies after parsing
    CHECK_THROWS_AS(parse_config("[grid]\nnx = 2\n"), ConfigError);
}

TEST_CASE("comments and blank lines are ignored", "[io]") {
    const ScenarioConfig sc = parse_config(
        "# leading comment\n"
        "\n"
        "[run]  # trailing comment\n"
        "t_end = 1.0 # another\n");
    CHECK(sc.t_end == 1.0);
}

TEST_CASE("--set overrides route through the same validation", "[io]") {
    ScenarioConfig sc = scenario_by_name("still-water", 33);
    apply_override(sc, "policy.cfl=0.3");
    CHECK(sc.policy.cfl == 0.3);
    apply_override(sc, "run.t_end=7");
    CHECK(sc.t_end == 7.0);
    CHECK_THROWS_AS(apply_override(sc, "policy.cfl=2.0"), ConfigError);
    CHECK_THROWS_AS(apply_override(sc, "nosection.x=1"), ConfigError);
    CHECK_THROWS_AS(apply_override(sc, "garbage"), ConfigError);
}

TEST_CASE("checkpoint and resume reproduce the unsplit run bit-exactly", "[io]") {
    ScenarioConfig sc = gen_five_drops(48);
    sc.t_end = 6.0;
    sc.snapshot_every = 2.0;
    const auto dir = std::filesystem::temp_directory_path() / "swe_ckpt_test";
    std::filesystem::remove_all(dir);
    sc.out_dir = (dir / "full").string();

    const RunResult full = run(sc, true);
    REQUIRE(full.report.snapshots_written >= 2);

    // resume from the first intermediate snapshot
    const std::string mid_path = full.report.snapshot_paths.front();
    SnapshotExtras extras;
    const FieldSet mid = read_snapshot_file(mid_path, nullptr, &extras);
    REQUIRE(extras.has_dt_next);
    REQUIRE(extras.has_step_index);
    REQUIRE(mid.t < sc.t_end);

    ScenarioConfig rest = sc;
    rest.out_dir = (dir / "resumed").string();
    const RunResult resumed =
        run_from(rest, mid, true, extras.step_index, extras.dt_next);

    const std::string full_bytes = snapshot_bytes(full.final_state, sc.physics.g);
    const std::string res_bytes = snapshot_bytes(resumed.final_state, sc.physics.g);
    CHECK(full_bytes == res_bytes);
    CHECK(full.report.steps == extras.step_index + resumed.report.steps);
}

TEST_CASE("checkpoint-resume also holds with the diffusion pass active", "[io]") {
    ScenarioConfig sc = gen_dam_break(200, 1.0, 0.5);
    sc.snapshot_every = sc.t_end / 4.0;
    const auto dir = std::filesystem::temp_directory_path() / "swe_ckpt_smooth";
    std::filesystem::remove_all(dir);
    sc.out_dir = (dir / "full").string();

    const RunResult full = run(sc, true);
    REQUIRE(full.report.snapshot_paths.size() >= 3);

    // split at the second intermediate snapshot (an odd-parity boundary in
    // most runs, which is exactly what the stored step index preserves)
    SnapshotExtras extras;
    const FieldSet mid = read_snapshot_file(full.report.snapshot_paths[1], nullptr, &extras);
    const RunResult resumed = run_from(sc, mid, false, extras.step_index, extras.dt_next);
    CHECK(snapshot_bytes(full.final_state, sc.physics.g) ==
          snapshot_bytes(resumed.final_state, sc.physics.g));
}
