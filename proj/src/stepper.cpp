#include "csf/stepper.hpp"

#include "csf/errors.hpp"
#include "csf/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace csf {

void StepperConfig::validate() const {
    if (!(dt > 0.0)) throw InvalidParams("stepper: dt must be positive");
    if (!(t_final > 0.0)) throw InvalidParams("stepper: t_final must be positive");
    if (!(blowup_threshold > 1.0))
        throw InvalidParams("stepper: blowup_threshold must exceed 1");
    if (sample_every < 1) throw InvalidParams("stepper: sample_every must be >= 1");
    if (scheme == Scheme::AdaptiveRK45 && (!(atol > 0.0) || !(rtol > 0.0)))
        throw InvalidParams("stepper: adaptive tolerances must be positive");
}

State apply_bcs(const State& s, const PhysConstants& c, Model model,
                const Field& b, const Field& h, A2HSign sign) {
    State out = s;
    const std::size_t last = out.num_nodes() - 1;
    out.u[0] = out.u[last] = 0.0;
    out.eta[0] = out.eta[last] = 0.0;
    out.zeta[0] = out.zeta[last] = 0.0;
    const BoundaryValues bv = boundary_values(s.t, b, h, c, model, sign);
    out.P[0] = bv.P_in;
    out.P[last] = bv.P_out;
    out.A[0] = bv.A_in;
    out.A[last] = bv.A_out;
    return out;
}

namespace {

State lincomb(const State& base, double t,
              std::initializer_list<std::pair<const StateDeriv*, double>> terms) {
    State out = base;
    out.t = t;
    for (auto [d, w] : terms) {
        const std::size_t n = base.num_nodes();
        for (std::size_t i = 0; i < n; ++i) {
            out.u[i] += w * d->u[i];
            out.eta[i] += w * d->eta[i];
            out.zeta[i] += w * d->zeta[i];
            out.P[i] += w * d->P[i];
            out.A[i] += w * d->A[i];
        }
    }
    return out;
}

Field upwind_ddz(const Field& u, const Grid& grid) {
    const std::size_t n = u.size();
    Field out(n);
    out[0] = (u[1] - u[0]) / grid.dz;
    for (std::size_t i = 1; i + 1 < n; ++i)
        out[i] = u[i] >= 0.0 ? (u[i] - u[i - 1]) / grid.dz
                             : (u[i + 1] - u[i]) / grid.dz;
    out[n - 1] = (u[n - 1] - u[n - 2]) / grid.dz;
    return out;
}

struct RhsContext {
    const StepperConfig& cfg;
    const PhysConstants& c;
    Model model;
    const Grid& grid;
    const SimulateHooks& hooks;
    const Field& b;
    const Field& h;

    void enforce(State& s) const {
        if (hooks.boundary) {
            (*hooks.boundary)(s);
        } else {
            s = apply_bcs(s, c, model, b, h, cfg.a2_h_sign);
        }
    }

    StateDeriv eval(const State& s) const {
        const Field uz = cfg.upwind_advection ? upwind_ddz(s.u, grid) : ddz(s.u, grid);
        const Field Pz = ddz(s.P, grid);
        StateDeriv d = rhs(model, s, uz, Pz, c);
        if (hooks.source) {
            const StateDeriv src = (*hooks.source)(s.t, grid);
            const std::size_t n = s.num_nodes();
            for (std::size_t i = 0; i < n; ++i) {
                d.u[i] += src.u[i];
                d.eta[i] += src.eta[i];
                d.zeta[i] += src.zeta[i];
                d.P[i] += src.P[i];
                d.A[i] += src.A[i];
            }
        }
        return d;
    }
};

State rk4_step(const State& s, double h, const RhsContext& ctx) {
    const double t = s.t;
    const StateDeriv k1 = ctx.eval(s);
    State s2 = lincomb(s, t + 0.5 * h, {{&k1, 0.5 * h}});
    ctx.enforce(s2);
    const StateDeriv k2 = ctx.eval(s2);
    State s3 = lincomb(s, t + 0.5 * h, {{&k2, 0.5 * h}});
    ctx.enforce(s3);
    const StateDeriv k3 = ctx.eval(s3);
    State s4 = lincomb(s, t + h, {{&k3, h}});
    ctx.enforce(s4);
    const StateDeriv k4 = ctx.eval(s4);
    State out = lincomb(s, t + h,
                        {{&k1, h / 6.0}, {&k2, h / 3.0}, {&k3, h / 3.0}, {&k4, h / 6.0}});
    ctx.enforce(out);
    return out;
}

// Dormand-Prince 5(4) tableau.
constexpr std::array<double, 7> kDpC = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr std::array<std::array<double, 6>, 7> kDpA = {{
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
}};
constexpr std::array<double, 7> kDpB5 = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192,
                                         -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr std::array<double, 7> kDpB4 = {5179.0 / 57600, 0.0, 7571.0 / 16695,
                                         393.0 / 640, -92097.0 / 339200,
                                         187.0 / 2100, 1.0 / 40};

double field_err(const Field& y, const Field& y5, const Field& e, double atol,
                 double rtol) {
    double m = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
        m = std::max(m, std::abs(e[i]) / sc);
    }
    return m;
}

struct Dp45Result {
    State next;
    double err; ///< scaled error estimate, accept when <= 1
};

Dp45Result dp45_step(const State& s, double h, const RhsContext& ctx) {
    std::array<StateDeriv, 7> k;
    k[0] = ctx.eval(s);
    for (int i = 1; i < 7; ++i) {
        State stage = s;
        stage.t = s.t + kDpC[static_cast<std::size_t>(i)] * h;
        const std::size_t n = s.num_nodes();
        for (int j = 0; j < i; ++j) {
            const double w = h * kDpA[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (w == 0.0) continue;
            for (std::size_t m = 0; m < n; ++m) {
                stage.u[m] += w * k[static_cast<std::size_t>(j)].u[m];
                stage.eta[m] += w * k[static_cast<std::size_t>(j)].eta[m];
                stage.zeta[m] += w * k[static_cast<std::size_t>(j)].zeta[m];
                stage.P[m] += w * k[static_cast<std::size_t>(j)].P[m];
                stage.A[m] += w * k[static_cast<std::size_t>(j)].A[m];
            }
        }
        ctx.enforce(stage);
        k[static_cast<std::size_t>(i)] = ctx.eval(stage);
    }

    const std::size_t n = s.num_nodes();
    State y5 = s;
    y5.t = s.t + h;
    StateDeriv errd;
    errd.u.assign(n, 0.0);
    errd.eta.assign(n, 0.0);
    errd.zeta.assign(n, 0.0);
    errd.P.assign(n, 0.0);
    errd.A.assign(n, 0.0);
    for (int i = 0; i < 7; ++i) {
        const double w5 = h * kDpB5[static_cast<std::size_t>(i)];
        const double we = h * (kDpB5[static_cast<std::size_t>(i)] - kDpB4[static_cast<std::size_t>(i)]);
        const auto& ki = k[static_cast<std::size_t>(i)];
        for (std::size_t m = 0; m < n; ++m) {
            y5.u[m] += w5 * ki.u[m];
            y5.eta[m] += w5 * ki.eta[m];
            y5.zeta[m] += w5 * ki.zeta[m];
            y5.P[m] += w5 * ki.P[m];
            y5.A[m] += w5 * ki.A[m];
            errd.u[m] += we * ki.u[m];
            errd.eta[m] += we * ki.eta[m];
            errd.zeta[m] += we * ki.zeta[m];
            errd.P[m] += we * ki.P[m];
            errd.A[m] += we * ki.A[m];
        }
    }
    ctx.enforce(y5);
    double err = 0.0;
    err = std::max(err, field_err(s.u, y5.u, errd.u, ctx.cfg.atol, ctx.cfg.rtol));
    err = std::max(err, field_err(s.eta, y5.eta, errd.eta, ctx.cfg.atol, ctx.cfg.rtol));
    err = std::max(err, field_err(s.zeta, y5.zeta, errd.zeta, ctx.cfg.atol, ctx.cfg.rtol));
    err = std::max(err, field_err(s.P, y5.P, errd.P, ctx.cfg.atol, ctx.cfg.rtol));
    err = std::max(err, field_err(s.A, y5.A, errd.A, ctx.cfg.atol, ctx.cfg.rtol));
    return {std::move(y5), err};
}

struct GrowthCheck {
    std::array<double, 5> scale; ///< 1 + initial max-norm per field
    double threshold;

    static GrowthCheck from(const State& init, double threshold) {
        return {{1.0 + max_abs(init.u), 1.0 + max_abs(init.eta),
                 1.0 + max_abs(init.zeta), 1.0 + max_abs(init.P),
                 1.0 + max_abs(init.A)},
                threshold};
    }

    /// Returns the name of the first blown-up field, or nullptr.
    const char* blown(const State& s) const {
        const std::array<std::pair<const Field*, const char*>, 5> fields = {
            {{&s.u, "u"}, {&s.eta, "eta"}, {&s.zeta, "zeta"}, {&s.P, "P"}, {&s.A, "A"}}};
        for (std::size_t i = 0; i < 5; ++i) {
            const Field& f = *fields[i].first;
            if (!all_finite(f) || max_abs(f) > threshold * scale[i])
                return fields[i].second;
        }
        return nullptr;
    }
};

} // namespace

State step(const State& s, const StepperConfig& cfg, const PhysConstants& c,
           Model model, const Field& b, const Field& h) {
    Grid grid(static_cast<int>(s.num_nodes()) - 1, c.L);
    SimulateHooks hooks;
    RhsContext ctx{cfg, c, model, grid, hooks, b, h};
    return rk4_step(s, cfg.dt, ctx);
}

Trajectory simulate(const State& init, const StepperConfig& cfg,
                    const PhysConstants& c, Model model, const Grid& grid,
                    const SimulateHooks& hooks) {
    cfg.validate();
    c.validate();

    Trajectory traj;
    const Field b = init.P; // boundary data are the initial profiles
    const Field h = init.A;
    RhsContext ctx{cfg, c, model, grid, hooks, b, h};

    State s = init;
    s.t = 0.0;
    {
        const std::size_t last = s.num_nodes() - 1;
        const double viol = std::max({std::abs(s.u[0]), std::abs(s.u[last]),
                                      std::abs(s.eta[0]), std::abs(s.eta[last]),
                                      std::abs(s.zeta[0]), std::abs(s.zeta[last])});
        if (viol > 1e-14)
            traj.events.push_back(
                "initial data violate the homogeneous boundary conditions "
                "(max magnitude " + std::to_string(viol) +
                "); boundary nodes overwritten at t=0");
    }
    ctx.enforce(s);
    const GrowthCheck growth = GrowthCheck::from(s, cfg.blowup_threshold);
    traj.samples.push_back(s);

    long accepted = 0;
    double dt = cfg.scheme == Scheme::FixedRK4 ? cfg.dt : cfg.dt_init;
    bool last_blowup_crossed = false;
    std::string last_singular;

    auto finish_blowup = [&](double t, const std::string& field) {
        traj.outcome = Outcome::BlowUpDetected;
        traj.event_time = t;
        traj.event_field = field;
    };

    while (s.t < cfg.t_final - 1e-14) {
        const double hstep = std::min(dt, cfg.t_final - s.t);
        if (cfg.scheme == Scheme::FixedRK4) {
            State next;
            try {
                next = rk4_step(s, hstep, ctx);
            } catch (const BlowUpCrossed&) {
                finish_blowup(s.t, "P");
                return traj;
            } catch (const SingularState& e) {
                traj.outcome = Outcome::Singular;
                traj.event_time = s.t;
                traj.event_field = e.what();
                return traj;
            }
            if (const char* f = growth.blown(next)) {
                finish_blowup(next.t, f);
                return traj;
            }
            s = std::move(next);
            ++accepted;
        } else {
            Dp45Result r;
            bool failed = false;
            try {
                r = dp45_step(s, hstep, ctx);
                last_blowup_crossed = false;
                last_singular.clear();
            } catch (const BlowUpCrossed&) {
                failed = true;
                last_blowup_crossed = true;
            } catch (const SingularState& e) {
                failed = true;
                last_singular = e.what();
            }
            if (!failed && r.err <= 1.0 && r.next.finite()) {
                s = std::move(r.next);
                ++accepted;
                const double fac = std::clamp(
                    0.9 * std::pow(std::max(r.err, 1e-10), -0.2), 0.2, 5.0);
                dt = hstep * fac;
                if (const char* f = growth.blown(s)) {
                    finish_blowup(s.t, f);
                    return traj;
                }
            } else {
                dt = 0.5 * hstep;
                if (dt < cfg.dt_min) {
                    if (last_blowup_crossed || growth.blown(s)) {
                        finish_blowup(s.t, last_blowup_crossed ? "P" : growth.blown(s));
                        return traj;
                    }
                    if (!last_singular.empty()) {
                        traj.outcome = Outcome::Singular;
                        traj.event_time = s.t;
                        traj.event_field = last_singular;
                        return traj;
                    }
                    throw StepSizeUnderflow("adaptive step size underflow at t=" +
                                            std::to_string(s.t));
                }
                continue;
            }
        }
        if (accepted % cfg.sample_every == 0) traj.samples.push_back(s);
    }
    if (traj.samples.back().t != s.t) traj.samples.push_back(s);
    traj.outcome = Outcome::Completed;
    traj.event_time = s.t;
    return traj;
}

} // namespace csf
