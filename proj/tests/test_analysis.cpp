#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "csf/analysis.hpp"
#include "csf/errors.hpp"
#include "csf/kernels.hpp"
#include "csf/scenario.hpp"

#include <cmath>
#include <random>

using namespace csf;

namespace {

const double kPi = 2.0 * std::asin(1.0);

PhysConstants with_beta_over_rho(double ratio) {
    PhysConstants c = PhysConstants::defaults();
    c.rho = 1.0;
    c.mu = ratio / 8.0; // with r = 1: beta = 8 mu = ratio
    c.r_foramen = 1.0;
    c.refresh_derived();
    return c;
}

} // namespace

TEST_CASE("caseA velocity slope passes with margin 15 - 4pi") {
    const PhysConstants c = with_beta_over_rho(15.0);
    const Grid g(100, 1.0);
    const Field f = g.sample([](double z) { return 4.0 * std::sin(kPi * z) + 1.0; });
    const Field b = g.make_field(0.0);
    const ExistenceReport rep = check_conditions(f, b, g, c);
    CHECK(rep.cond_slope.pass);
    CHECK(rep.cond_slope.margin ==
          doctest::Approx(15.0 - 4.0 * kPi).epsilon(5e-3));
}

TEST_CASE("caseB velocity slope fails when beta/rho = 2") {
    const PhysConstants c = with_beta_over_rho(2.0);
    const Grid g(100, 1.0);
    const Field f = g.sample([](double z) { return -(std::exp(z) + 1.0); });
    const Field b = g.make_field(0.0);
    const ExistenceReport rep = check_conditions(f, b, g, c);
    CHECK(!rep.cond_slope.pass);
    CHECK(rep.cond_slope.margin ==
          doctest::Approx(2.0 - std::exp(1.0)).epsilon(1e-3));
}

TEST_CASE("zero pressure datum passes the norm condition with full margin") {
    const PhysConstants c = PhysConstants::defaults();
    const Grid g(50, 1.0);
    const ExistenceReport rep =
        check_conditions(g.make_field(0.0), g.make_field(0.0), g, c);
    CHECK(rep.cond_pressure.pass);
    CHECK(rep.b_norm == 0.0);
    CHECK(rep.cond_pressure.margin ==
          doctest::Approx(c.beta / (4.0 * c.rho)).epsilon(1e-12));
}

TEST_CASE("posture classification follows the datum sign pattern") {
    const PhysConstants c = PhysConstants::defaults();
    const Grid g(20, 1.0);
    const Field f = g.make_field(0.0);
    CHECK(check_conditions(f, g.make_field(0.5), g, c).posture == Posture::Supine);
    CHECK(check_conditions(f, g.make_field(-0.5), g, c).posture == Posture::Upright);
    CHECK(check_conditions(f, g.sample([](double z) { return z - 0.5; }), g, c)
              .posture == Posture::Mixed);
}

TEST_CASE("negative data predict no blow-up, positive data a finite one") {
    const PhysConstants c = PhysConstants::defaults();
    const Grid g(20, 1.0);
    const Field f = g.make_field(0.0);
    CHECK(!check_conditions(f, g.make_field(-0.5), g, c).predicted_blowup);
    const auto rep = check_conditions(f, g.make_field(std::exp(1.0)), g, c);
    REQUIRE(rep.predicted_blowup);
    const double expected =
        std::log(1.0 + 3.0 / std::exp(1.0)) / 1.5; // RQ_p + P~ = 3, C = 1.5
    CHECK(*rep.predicted_blowup == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("sobolev surrogate norm on a known profile") {
    const Grid g(400, 1.0);
    const Field b = g.sample([](double z) { return std::cos(kPi * z) / 6.0; });
    // ||b|| = 1/(6 sqrt2), ||b'|| = pi/(6 sqrt2), ||b''|| = pi^2/(6 sqrt2)
    const double exact = std::sqrt((1.0 + kPi * kPi + std::pow(kPi, 4.0)) / 72.0);
    CHECK(sobolev_surrogate_norm(b, g) == doctest::Approx(exact).epsilon(1e-3));
}

TEST_CASE("pzz bound: uniform datum is flat, curved datum matches analytics") {
    const PhysConstants c = PhysConstants::defaults();
    const RiccatiParams rp = RiccatiParams::from_constants(c);
    const Grid g(100, 1.0);
    const PzzBound flat = pzz_bound(g.make_field(0.8), rp, g, c, 0.4);
    CHECK(flat.sup < 1e-9); // curvature of a uniform profile is pure rounding
    CHECK(flat.pass);

    const Field b = g.sample([](double z) { return std::cos(kPi * z) / 6.0; });
    const PzzBound tiny = pzz_bound(b, rp, g, c, 1e-12);
    CHECK(tiny.sup == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-3));
    CHECK(tiny.sup == doctest::Approx(max_abs(d2dz2(b, g))).epsilon(1e-9));
}

TEST_CASE("pzz sup is nondecreasing in the horizon for positive data") {
    const PhysConstants c = PhysConstants::defaults();
    const RiccatiParams rp = RiccatiParams::from_constants(c);
    const Grid g(60, 1.0);
    const Field b = g.sample([](double z) { return 0.1 + 0.05 * std::cos(kPi * z); });
    double prev = 0.0;
    for (double T : {0.2, 0.5, 1.0, 1.5}) {
        const double sup = pzz_bound(b, rp, g, c, T).sup;
        CHECK(sup >= prev);
        prev = sup;
    }
}

TEST_CASE("homogeneous characteristics never blow up above the slope bound") {
    const PhysConstants c = with_beta_over_rho(2.0);
    const double p = 2.0;
    auto q0 = [](double) { return 0.0; };
    for (double w0 : {-2.0, -1.5, 0.0, 3.0}) {
        const auto res = characteristic_riccati(w0, q0, c, 50.0 / p);
        CHECK(!res.blew_up);
    }
}

TEST_CASE("homogeneous characteristics below the bound match the closed form") {
    const PhysConstants c = with_beta_over_rho(2.0);
    const double p = 2.0;
    auto q0 = [](double) { return 0.0; };
    for (double w0 : {-2.1, -3.0, -7.5, -40.0}) {
        const double expected = homogeneous_blowup_time(w0, p);
        const auto res = characteristic_riccati(w0, q0, c, 10.0);
        REQUIRE(res.blew_up);
        CHECK(res.t_star == doctest::Approx(expected).epsilon(0.01));
    }
}

TEST_CASE("constant forcing equilibrium stays put") {
    const PhysConstants c = with_beta_over_rho(2.0);
    const double p = 2.0, q = 0.1;
    // stable root of w^2 + p w + p q = 0
    const double w0 = (-p + std::sqrt(p * p - 4.0 * p * q)) / 2.0;
    const auto res =
        characteristic_riccati(w0, [&](double) { return q; }, c, 5.0);
    REQUIRE(!res.blew_up);
    CHECK(res.samples.back().second == doctest::Approx(w0).epsilon(1e-6));
}

TEST_CASE("derived coefficient variant scales the forcing by 1/rho") {
    PhysConstants c = with_beta_over_rho(2.0);
    c.rho = 2.0;
    c.mu = 1.0; // beta = 8, p = 4
    c.refresh_derived();
    // with q = 0 both variants coincide
    const auto a = characteristic_riccati(-1.0, [](double) { return 0.0; }, c,
                                          1.0, PzzCoeff::Printed);
    const auto b = characteristic_riccati(-1.0, [](double) { return 0.0; }, c,
                                          1.0, PzzCoeff::Derived);
    CHECK(a.samples.back().second ==
          doctest::Approx(b.samples.back().second).epsilon(1e-9));
}

TEST_CASE("slope failure with uniform pressure implies characteristic blow-up") {
    const PhysConstants c = with_beta_over_rho(2.0);
    const Grid g(50, 1.0);
    const Field f = g.sample([](double z) { return -4.0 * z; }); // f' = -4 < -2
    const Field b = g.make_field(0.3);
    const ExistenceReport rep = check_conditions(f, b, g, c);
    CHECK(!rep.cond_slope.pass);
    CHECK(rep.cond_slope.margin < -1.0);
    const double w0 = -4.0;
    const auto res =
        characteristic_riccati(w0, [](double) { return 0.0; }, c, 10.0);
    REQUIRE(res.blew_up);
    CHECK(res.t_star ==
          doctest::Approx(homogeneous_blowup_time(w0, 2.0)).epsilon(0.01));
}

TEST_CASE("data passing all conditions with margin also complete in simulation") {
    const ScenarioConfig base = preset_case_a();
    const PhysConstants c = base.constants;
    const Grid g(100, c.L);
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    int accepted = 0;
    for (int trial = 0; trial < 12 && accepted < 5; ++trial) {
        const double a1 = 3.0 * amp(rng), a2 = amp(rng);
        const double b1 = 0.08 * amp(rng), b2 = 0.02 * amp(rng);
        ScenarioConfig sc = base;
        const Field f = g.sample([&](double z) {
            return a1 * std::sin(kPi * z) + a2 * std::sin(2.0 * kPi * z);
        });
        const Field b = g.sample([&](double z) {
            return b1 * std::cos(kPi * z) + b2 * std::cos(2.0 * kPi * z);
        });
        const ExistenceReport rep = check_conditions(f, b, g, c, 1.0, 1.0);
        const bool margin10 =
            rep.cond_slope.margin > 0.1 * c.beta / c.rho &&
            rep.cond_pressure.margin > 0.1 * rep.pressure_bound &&
            rep.cond_pzz.margin > 0.1 * c.beta / (4.0 * c.rho);
        if (!(rep.all_pass() && margin10)) continue;
        ++accepted;
        State init = build_initial_state(sc, g);
        init.u = f;
        init.P = b;
        const Trajectory traj = simulate(init, sc.stepper, c, Model::A1, g);
        CHECK(traj.outcome == Outcome::Completed);
    }
    CHECK(accepted >= 5);
}

TEST_CASE("millimetre-of-mercury conversion is exact on the pinned value") {
    CHECK(pa_to_mmhg(932.54) == 7.0);
    CHECK(pa_to_mmhg(0.0) == 0.0);
    CHECK(pa_to_mmhg(2.0 * 932.54) == doctest::Approx(14.0).epsilon(1e-14));
}

TEST_CASE("physiology comparison flags slow model velocities") {
    const Grid g(10, 1.0);
    State s;
    s.t = 0.0;
    s.u = g.make_field(1.4e-3); // 1.4 mm/s
    s.eta = g.make_field(0.0);
    s.zeta = g.make_field(0.0);
    s.P = g.make_field(932.54);
    s.A = g.make_field(1.0);
    Trajectory traj;
    traj.samples = {s};
    const PhysiologyReport rep = compare_physiology(traj);
    CHECK(rep.peak_velocity_mm_s == doctest::Approx(1.4).epsilon(1e-12));
    CHECK(!rep.velocity_in_range);
    CHECK(rep.icp_min_mmHg == 7.0);
    CHECK(rep.icp_max_mmHg == 7.0);
    CHECK(rep.icp_in_supine_range);
}

TEST_CASE("a zero trajectory sits outside every range") {
    const Grid g(10, 1.0);
    State s;
    s.u = g.make_field(0.0);
    s.eta = g.make_field(0.0);
    s.zeta = g.make_field(0.0);
    s.P = g.make_field(0.0);
    s.A = g.make_field(1.0);
    Trajectory traj;
    traj.samples = {s};
    const PhysiologyReport rep = compare_physiology(traj);
    CHECK(rep.peak_velocity_mm_s == 0.0);
    CHECK(!rep.velocity_in_range);
    CHECK(!rep.icp_in_supine_range);
}
