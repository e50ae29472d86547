#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "csf/closed_form.hpp"
#include "csf/errors.hpp"
#include "csf/scenario.hpp"
#include "csf/stepper.hpp"

#include <cmath>

using namespace csf;

namespace {

const double kPi = 2.0 * std::asin(1.0);

// Constants making the pressure equation effectively linear, P' = -P:
// C = K (Q_p + P_tilde / R) = -1 with a negligible quadratic coefficient.
PhysConstants linear_decay_constants() {
    PhysConstants c = PhysConstants::defaults();
    c.rho = 1.0;
    c.delta = 1e20; // huge alpha_hat so the tissue pair stays frozen
    c.alpha_bar = 0.0;
    c.Q_p = 0.0;
    c.R_abs = 1e20;
    c.P_tilde = -1e10;
    c.K_comp = 1e10; // K/R = 1e-10, C = -1
    c.refresh_derived();
    return c;
}

State resting_state(const Grid& g, double P0, double A0) {
    State s;
    s.t = 0.0;
    s.u = g.make_field(0.0);
    s.eta = g.make_field(0.0);
    s.zeta = g.make_field(0.0);
    s.P = g.make_field(P0);
    s.A = g.make_field(A0);
    return s;
}

} // namespace

TEST_CASE("stepper config validation") {
    StepperConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidParams);
    cfg = StepperConfig{};
    cfg.blowup_threshold = 0.5;
    CHECK_THROWS_AS(cfg.validate(), InvalidParams);
    cfg = StepperConfig{};
    cfg.sample_every = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidParams);
}

TEST_CASE("apply_bcs is idempotent and leaves the interior untouched") {
    const PhysConstants c = PhysConstants::defaults();
    const Grid g(20, c.L);
    State s = resting_state(g, 0.5, 1.0);
    s.u = g.sample([](double z) { return z * (1.0 - z); });
    s.u[7] = 3.3;
    const Field b = s.P, h = s.A;
    const State once = apply_bcs(s, c, Model::A1, b, h);
    const State twice = apply_bcs(once, c, Model::A1, b, h);
    CHECK(once.u[7] == 3.3);
    CHECK(once.u.front() == 0.0);
    CHECK(once.u.back() == 0.0);
    CHECK(once.u == twice.u);
    CHECK(once.P == twice.P);
    CHECK(once.A == twice.A);
}

TEST_CASE("apply_bcs zeroes tissue ends and keeps data at t=0") {
    const PhysConstants c = PhysConstants::defaults();
    const Grid g(10, c.L);
    State s = resting_state(g, 0.25, 1.5);
    s.u = g.make_field(2.0);
    s.eta = g.make_field(0.3);
    s.zeta = g.make_field(-0.4);
    const Field b = s.P, h = s.A;
    const State out = apply_bcs(s, c, Model::A2, b, h);
    CHECK(out.u.front() == 0.0);
    CHECK(out.u.back() == 0.0);
    CHECK(out.eta.front() == 0.0);
    CHECK(out.zeta.back() == 0.0);
    CHECK(out.u[3] == 2.0);
    CHECK(out.P.front() == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(out.A.back() == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("repeated RK4 steps track exponential pressure decay to 1e-8") {
    const PhysConstants c = linear_decay_constants();
    const Grid g(8, c.L);
    State s = resting_state(g, 1.0, 1.0);
    StepperConfig cfg;
    cfg.dt = 1e-3;
    const Field b = s.P, h = s.A;
    s = apply_bcs(s, c, Model::A1, b, h);
    for (int k = 0; k < 1000; ++k) s = step(s, cfg, c, Model::A1, b, h);
    CHECK(s.t == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.P[4] == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
}

TEST_CASE("one RK4 step matches the pressure closed form at fifth order") {
    const PhysConstants c = PhysConstants::defaults();
    const RiccatiParams rp = RiccatiParams::from_constants(c);
    const Grid g(8, c.L);
    const double b0 = 1.0 / 6.0;
    double errs[2];
    int idx = 0;
    for (double dt : {5e-3, 2.5e-3}) {
        State s = resting_state(g, b0, 1.0);
        const Field b = s.P, h = s.A;
        StepperConfig cfg;
        cfg.dt = dt;
        const State next = step(s, cfg, c, Model::A1, b, h);
        errs[idx++] = std::abs(next.P[4] - riccati_scalar(b0, dt, rp));
    }
    CHECK(errs[0] / errs[1] == doctest::Approx(32.0).epsilon(0.4));
}

TEST_CASE("steps preserve the homogeneous velocity boundary condition") {
    ScenarioConfig sc = preset_case_a();
    sc.stepper.t_final = 0.2;
    const Grid g = make_grid(sc);
    const State init = build_initial_state(sc, g);
    const Trajectory traj = simulate(init, sc.stepper, sc.constants, Model::A1, g);
    REQUIRE(traj.outcome == Outcome::Completed);
    for (const State& s : traj.samples) {
        CHECK(std::abs(s.u.front()) <= 1e-14);
        CHECK(std::abs(s.u.back()) <= 1e-14);
        CHECK(std::abs(s.eta.front()) <= 1e-14);
        CHECK(std::abs(s.eta.back()) <= 1e-14);
        CHECK(std::abs(s.zeta.front()) <= 1e-14);
        CHECK(std::abs(s.zeta.back()) <= 1e-14);
    }
}

TEST_CASE("full equilibrium stays constant in time") {
    PhysConstants c = PhysConstants::defaults();
    c.Q_p = 0.0;
    c.P_tilde = 0.0;
    c.alpha_bar = 0.0;
    c.refresh_derived(); // C = 0: flat-pressure limit
    const Grid g(20, c.L);
    const State init = resting_state(g, 0.0, 1.0);
    StepperConfig cfg;
    cfg.t_final = 0.5;
    cfg.sample_every = 20;
    for (Model m : {Model::A1, Model::A2}) {
        const Trajectory traj = simulate(init, cfg, c, m, g);
        REQUIRE(traj.outcome == Outcome::Completed);
        for (const State& s : traj.samples) {
            CHECK(max_abs(s.u) <= 1e-10);
            CHECK(max_abs(s.eta) <= 1e-10);
            CHECK(max_abs(s.zeta) <= 1e-10);
            CHECK(max_abs(s.P) <= 1e-10);
            for (double a : s.A) CHECK(a == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("sampling cadence: 200 steps at cadence 10 gives 21 samples") {
    ScenarioConfig sc = preset_case_a();
    sc.stepper.dt = 5e-3;
    sc.stepper.t_final = 1.0;
    sc.stepper.sample_every = 10;
    const Grid g = make_grid(sc);
    const State init = build_initial_state(sc, g);
    const Trajectory traj = simulate(init, sc.stepper, sc.constants, Model::A1, g);
    REQUIRE(traj.outcome == Outcome::Completed);
    CHECK(traj.samples.size() == 21);
    CHECK(traj.samples.front().t == 0.0);
    CHECK(traj.samples.back().t == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sample times strictly increase and end at t_final when completed") {
    ScenarioConfig sc = preset_case_a();
    sc.stepper.sample_every = 7;
    const Grid g = make_grid(sc);
    const State init = build_initial_state(sc, g);
    const Trajectory traj = simulate(init, sc.stepper, sc.constants, Model::A2, g);
    REQUIRE(traj.outcome == Outcome::Completed);
    for (std::size_t i = 1; i < traj.samples.size(); ++i)
        CHECK(traj.samples[i].t > traj.samples[i - 1].t);
    CHECK(traj.samples.back().t == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("simulated pressure matches the closed form at every sample") {
    ScenarioConfig sc = preset_case_a();
    const Grid g = make_grid(sc);
    const State init = build_initial_state(sc, g);
    const RiccatiParams rp = RiccatiParams::from_constants(sc.constants);
    for (Model m : {Model::A1, Model::A2}) {
        const Trajectory traj = simulate(init, sc.stepper, sc.constants, m, g);
        REQUIRE(traj.outcome == Outcome::Completed);
        for (const State& s : traj.samples) {
            const Field exact = riccati_pressure(init.P, s.t, rp);
            for (std::size_t i = 0; i < exact.size(); ++i) {
                const double scale = std::max(1e-3, std::abs(exact[i]));
                CHECK(std::abs(s.P[i] - exact[i]) / scale < 1e-6);
            }
        }
    }
}

TEST_CASE("uniform positive datum above threshold triggers blow-up detection") {
    // C = 1, K/(RC) = 1, b = 1: blow-up at ln 2.
    PhysConstants c = PhysConstants::defaults();
    c.rho = 1.0;
    c.delta = 1.0;
    c.alpha_bar = 0.0;
    c.Q_p = 0.5;
    c.R_abs = 1.0;
    c.P_tilde = 0.5;
    c.K_comp = 1.0;
    c.mu = 0.25; // with r = 1: beta/rho = 2, non-stiff at this dt
    c.r_foramen = 1.0;
    c.refresh_derived();
    const Grid g(10, c.L);
    const State init = resting_state(g, 1.0, 1.0);
    StepperConfig cfg;
    cfg.dt = 1e-4;
    cfg.t_final = 1.0;
    cfg.blowup_threshold = 1e6;
    const Trajectory traj = simulate(init, cfg, c, Model::A1, g);
    REQUIRE(traj.outcome == Outcome::BlowUpDetected);
    CHECK(traj.event_time == doctest::Approx(std::log(2.0)).epsilon(0.01));
}

TEST_CASE("adaptive scheme reproduces the fixed-step pressure solution") {
    ScenarioConfig sc = preset_case_a();
    sc.stepper.scheme = Scheme::AdaptiveRK45;
    sc.stepper.atol = 1e-10;
    sc.stepper.rtol = 1e-10;
    sc.stepper.t_final = 0.5;
    const Grid g = make_grid(sc);
    const State init = build_initial_state(sc, g);
    const Trajectory traj = simulate(init, sc.stepper, sc.constants, Model::A1, g);
    REQUIRE(traj.outcome == Outcome::Completed);
    const RiccatiParams rp = RiccatiParams::from_constants(sc.constants);
    const State& last = traj.samples.back();
    const Field exact = riccati_pressure(init.P, last.t, rp);
    for (std::size_t i = 0; i < exact.size(); ++i)
        CHECK(last.P[i] ==
              doctest::Approx(exact[i]).epsilon(1e-6).scale(1e-3));
}

TEST_CASE("adaptive scheme detects the caseB blow-up") {
    ScenarioConfig sc = preset_case_b();
    sc.stepper.scheme = Scheme::AdaptiveRK45;
    const Grid g = make_grid(sc);
    const State init = build_initial_state(sc, g);
    const Trajectory traj = simulate(init, sc.stepper, sc.constants, Model::A1, g);
    CHECK(traj.outcome == Outcome::BlowUpDetected);
    CHECK(traj.event_time < 1.0);
}

TEST_CASE("a collapsing denominator yields a Singular outcome") {
    PhysConstants c = PhysConstants::defaults();
    c.delta = 1e-12; // alpha_hat*A under the floor where A crosses zero
    c.refresh_derived();
    ScenarioConfig sc = preset_case_a();
    sc.constants = c;
    const Grid g = make_grid(sc);
    const State init = build_initial_state(sc, g);
    const Trajectory traj = simulate(init, sc.stepper, c, Model::A1, g);
    CHECK(traj.outcome == Outcome::Singular);
}

TEST_CASE("the initial boundary violation of caseA is recorded") {
    ScenarioConfig sc = preset_case_a();
    sc.stepper.t_final = 0.05;
    const Grid g = make_grid(sc);
    const State init = build_initial_state(sc, g);
    const Trajectory traj = simulate(init, sc.stepper, sc.constants, Model::A1, g);
    REQUIRE(!traj.events.empty());
    CHECK(traj.events.front().find("boundary") != std::string::npos);
}

TEST_CASE("simulation is deterministic") {
    ScenarioConfig sc = preset_case_a();
    sc.stepper.t_final = 0.3;
    const Grid g = make_grid(sc);
    const State init = build_initial_state(sc, g);
    const Trajectory a = simulate(init, sc.stepper, sc.constants, Model::A2, g);
    const Trajectory b = simulate(init, sc.stepper, sc.constants, Model::A2, g);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t k = 0; k < a.samples.size(); ++k) {
        CHECK(a.samples[k].u == b.samples[k].u);
        CHECK(a.samples[k].eta == b.samples[k].eta);
        CHECK(a.samples[k].zeta == b.samples[k].zeta);
        CHECK(a.samples[k].P == b.samples[k].P);
        CHECK(a.samples[k].A == b.samples[k].A);
    }
}

TEST_CASE("upwind advection mode also completes caseA") {
    ScenarioConfig sc = preset_case_a();
    sc.stepper.upwind_advection = true;
    sc.stepper.t_final = 0.3;
    const Grid g = make_grid(sc);
    const State init = build_initial_state(sc, g);
    const Trajectory traj = simulate(init, sc.stepper, sc.constants, Model::A1, g);
    CHECK(traj.outcome == Outcome::Completed);
}
