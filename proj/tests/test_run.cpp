#include <catch2/catch.hpp>

#include <cmath>
#include <filesystem>

#include "swe/bench.hpp"
#include "swe/run.hpp"

using namespace swe;

namespace {

bool bits_equal(const FieldSet& a, const FieldSet& b) {
    return a.h == b.h && a.qx == b.qx && a.qy == b.qy;
}

}  // namespace

TEST_CASE("t_end = 0 returns the initial state after zero steps", "[run]") {
    ScenarioConfig sc = scenario_by_name("still-water", 33);
    sc.t_end = 0.0;
    const FieldSet ic = build_initial_state(sc);
    const RunResult r = run_from(sc, ic, false);
    CHECK(r.report.steps == 0);
    CHECK(bits_equal(r.final_state, ic));
    CHECK(r.final_state.t == 0.0);
}

TEST_CASE("still water runs to t_end at the constant CFL step", "[run]") {
    ScenarioConfig sc = scenario_by_name("still-water", 33);
    sc.t_end = 10.0;
    const FieldSet ic = build_initial_state(sc);
    const RunResult r = run_from(sc, ic, false);

    CHECK(bits_equal(r.final_state, ic));
    CHECK(r.final_state.t == sc.t_end);  // exact landing
    CHECK(r.report.t_final == sc.t_end);

    // independent scalar re-execution of the clamp loop
    const double dt0 = compute_dt(ic, sc.policy, sc.physics, 1e18);
    unsigned long long expected = 0;
    for (double t = 0.0; t < sc.t_end; ++expected) {
        t = (dt0 >= sc.t_end - t) ? sc.t_end : t + dt0;
    }
    CHECK(r.report.steps == expected);
}

TEST_CASE("run reports are executor-independent apart from wall time", "[run]") {
    ScenarioConfig sc = gen_five_drops(65);
    sc.t_end = 10.0;

    ScenarioConfig naive = sc;
    naive.executor = ExecutorKind::naive();
    ScenarioConfig tiled = sc;
    tiled.executor = ExecutorKind::tiled(16);
    ScenarioConfig dec = sc;
    dec.executor = ExecutorKind::decomposed(4);

    const RunResult a = run(naive, false);
    const RunResult b = run(tiled, false);
    const RunResult c = run(dec, false);

    CHECK(a.report.steps == b.report.steps);
    CHECK(a.report.steps == c.report.steps);
    CHECK(bits_equal(a.final_state, b.final_state));
    CHECK(bits_equal(a.final_state, c.final_state));
    CHECK(a.final_state.t == sc.t_end);
    CHECK(a.dt_next == b.dt_next);
    CHECK(a.dt_next == c.dt_next);

    CHECK(a.report.cells == 4225);
    CHECK(a.report.cells_per_second() > 0.0);
    CHECK(c.report.accounting.halo_values_exchanged == halo_exchange_values(4, 65));
}

TEST_CASE("snapshots are written at the cadence plus a final one", "[run]") {
    ScenarioConfig sc = gen_five_drops(33);
    sc.t_end = 4.0;
    sc.snapshot_every = 1.0;
    const auto dir = std::filesystem::temp_directory_path() / "swe_run_test";
    std::filesystem::remove_all(dir);
    sc.out_dir = (dir / "snaps").string();

    const RunResult r = run(sc, true);
    CHECK(r.report.snapshots_written >= 4);
    CHECK(r.report.snapshot_paths.size() ==
          static_cast<std::size_t>(r.report.snapshots_written));
    for (const std::string& p : r.report.snapshot_paths) {
        CHECK(std::filesystem::exists(p));
        CHECK_NOTHROW(read_snapshot_file(p));
    }
    // final snapshot reproduces the final state bit-exactly
    const FieldSet last = read_snapshot_file(r.report.snapshot_paths.back());
    CHECK(bits_equal(last, r.final_state));
    CHECK(last.t == sc.t_end);
    CHECK(std::filesystem::exists(sc.out_dir + "/" + sc.name + "_report.txt"));
}

TEST_CASE("the report text is key: value lines", "[run]") {
    ScenarioConfig sc = scenario_by_name("still-water", 33);
    sc.t_end = 1.0;
    const RunResult r = run(sc, false);
    const std::string text = r.report.to_text();
    CHECK(text.find("scenario: still-water") != std::string::npos);
    CHECK(text.find("steps: ") != std::string::npos);
    CHECK(text.find("k2_predictor_seconds: ") != std::string::npos);
    CHECK(text.find("cells_per_second: ") != std::string::npos);
}

TEST_CASE("instability aborts the run with the failing cell and time", "[run]") {
    ScenarioConfig sc = gen_dam_break(48, 1.0, 1e-4);
    sc.physics.nu_art = 0.0;  // raw scheme: the undershoot drains the shelf
    sc.t_end = 20.0;
    bool thrown = false;
    try {
        run(sc, false);
    } catch (const InstabilityError& e) {
        thrown = true;
        CHECK(e.cell_i() >= 0);
        CHECK(e.cell_j() >= 0);
        CHECK(e.sim_time() > 0.0);
    }
    CHECK(thrown);
}

TEST_CASE("a collapsed step size aborts with the step-collapse error", "[run]") {
    ScenarioConfig sc = scenario_by_name("still-water", 33);
    sc.t_end = 1.0;
    sc.policy.dt_min = 1.0;  // no CFL step can reach this
    CHECK_THROWS_AS(run(sc, false), StepCollapseError);
}

TEST_CASE("bench instrumentation never alters the committed states", "[run]") {
    const int steps = 8;
    std::vector<FieldSet> finals;
    const std::vector<BenchRow> rows =
        run_bench({48}, steps, {ExecutorKind::naive(), ExecutorKind::tiled(8)}, 2, &finals);
    REQUIRE(rows.size() == 2);
    REQUIRE(finals.size() == 2);
    CHECK(rows[0].median_sec_per_step > 0.0);

    // an uninstrumented advance over the same warm-up + timed steps
    const ScenarioConfig sc = gen_five_drops(48);
    const FieldSet ic = build_initial_state(sc);
    Stepper st(sc.grid, sc.physics, sc.policy, sc.boundaries, ExecutorKind::naive());
    st.load(ic);
    double dt = compute_dt(ic, sc.policy, sc.physics, 1e18);
    for (int k = 0; k <= steps; ++k) {
        dt = st.step(dt, static_cast<unsigned long long>(k)).dt_next;
    }
    const FieldSet plain = st.state();
    CHECK(finals[0].h == plain.h);
    CHECK(finals[0].qx == plain.qx);
    CHECK(finals[0].qy == plain.qy);
    CHECK(finals[1].h == plain.h);  // tiled bench run matches too

    // single size, single rep: exactly one row
    CHECK(run_bench({48}, 1, {ExecutorKind::naive()}, 1).size() == 1);

    CHECK_THROWS_AS(run_bench({20}, 1, {ExecutorKind::naive()}, 1), ConfigError);
    CHECK_THROWS_AS(run_bench({48}, 0, {ExecutorKind::naive()}, 1), ConfigError);
}
