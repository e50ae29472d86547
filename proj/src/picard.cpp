#include "csf/picard.hpp"

#include "csf/errors.hpp"
#include "csf/kernels.hpp"

#include <cmath>
#include <string>

namespace csf {

std::size_t PicardConfig::num_samples() const {
    return static_cast<std::size_t>(std::llround(T / dt)) + 1;
}

void PicardConfig::validate() const {
    if (!(T > 0.0) || !(dt > 0.0))
        throw InvalidParams("picard: T and dt must be positive");
    const double k = T / dt;
    if (std::abs(k - std::llround(k)) > 1e-9)
        throw InvalidParams("picard: T must be an integer multiple of dt");
}

namespace {

void zero_tissue_ends(State& s) {
    const std::size_t last = s.num_nodes() - 1;
    s.u[0] = s.u[last] = 0.0;
    s.eta[0] = s.eta[last] = 0.0;
    s.zeta[0] = s.zeta[last] = 0.0;
}

Field lerp(const Field& a, const Field& b, double w) {
    Field out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = (1.0 - w) * a[i] + w * b[i];
    return out;
}

/// One RK4 step of the frozen-advection transport equation
/// du/dt = -u_frozen du/dz - (beta/rho) u - (1/rho) dP_frozen/dz
/// between samples k and k+1, with homogeneous Dirichlet ends.
Field transport_step(const Field& u, const Field& adv0, const Field& adv1,
                     const Field& Pz0, const Field& Pz1, double dt,
                     const Grid& grid, const PhysConstants& c) {
    const double br = c.beta / c.rho;
    const double ir = 1.0 / c.rho;
    auto rhs = [&](const Field& v, double w) {
        const Field vz = ddz(v, grid);
        const Field adv = lerp(adv0, adv1, w);
        const Field Pz = lerp(Pz0, Pz1, w);
        Field d(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            d[i] = -adv[i] * vz[i] - br * v[i] - ir * Pz[i];
        return d;
    };
    auto stage = [&](const Field& base, const Field& k, double s) {
        Field out = axpy(base, k, s);
        out.front() = out.back() = 0.0;
        return out;
    };
    const Field k1 = rhs(u, 0.0);
    const Field k2 = rhs(stage(u, k1, 0.5 * dt), 0.5);
    const Field k3 = rhs(stage(u, k2, 0.5 * dt), 0.5);
    const Field k4 = rhs(stage(u, k3, dt), 1.0);
    Field out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        out[i] = u[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    out.front() = out.back() = 0.0;
    return out;
}

double linf_l2_diff(const StateSequence& a, const StateSequence& b,
                    const Field State::* field, const Grid& grid) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const Field& fa = a[k].*field;
        const Field& fb = b[k].*field;
        Field d(fa.size());
        for (std::size_t i = 0; i < fa.size(); ++i) d[i] = fa[i] - fb[i];
        m = std::max(m, l2_norm(d, grid));
    }
    return m;
}

} // namespace

StateSequence picard_initial(const State& init, const PicardConfig& pc) {
    pc.validate();
    const std::size_t m = pc.num_samples();
    StateSequence seq(m, init);
    for (std::size_t k = 0; k < m; ++k) {
        seq[k].t = static_cast<double>(k) * pc.dt;
        zero_tissue_ends(seq[k]);
    }
    return seq;
}

StateSequence picard_step(const StateSequence& prev, const State& init,
                          const PicardConfig& pc, const PhysConstants& c,
                          Model model, const Grid& grid) {
    pc.validate();
    const std::size_t m = prev.size();
    const std::size_t n = grid.num_nodes();
    const RiccatiParams rp = RiccatiParams::from_constants(c);

    StateSequence next(m);
    for (std::size_t k = 0; k < m; ++k) next[k].t = static_cast<double>(k) * pc.dt;

    // Pressure: closed form of the initial datum, identical at every sweep.
    for (std::size_t k = 0; k < m; ++k)
        next[k].P = riccati_pressure(init.P, next[k].t, rp);

    // Tissue velocity: linear ODE with coefficients frozen at the previous
    // iterate, F = (k~/alpha^) A, J = (P - kappa eta / A - P~) / alpha^.
    {
        std::vector<Field> G(m, Field(n)), H(m, Field(n));
        for (std::size_t k = 0; k < m; ++k) {
            const State& p = prev[k];
            for (std::size_t i = 0; i < n; ++i) {
                G[k][i] = (c.k_tilde / c.alpha_hat) * p.A[i];
                double elastic = 0.0;
                if (c.kappa != 0.0) {
                    if (std::abs(p.A[i]) < c.denominator_floor)
                        throw SingularState(
                            "picard: area iterate vanishes at node " +
                            std::to_string(i));
                    elastic = c.kappa * p.eta[i] / p.A[i];
                }
                H[k][i] = (p.P[i] - elastic - c.P_tilde) / c.alpha_hat;
            }
        }
        const std::vector<Field> zeta = integrate_linear_sampled(init.zeta, G, H, pc.dt);
        for (std::size_t k = 0; k < m; ++k) next[k].zeta = zeta[k];
    }

    // Displacement: eta(t) = g + int_0^t zeta_prev, cumulative trapezoid.
    {
        Field acc = init.eta;
        next[0].eta = acc;
        for (std::size_t k = 1; k < m; ++k) {
            for (std::size_t i = 0; i < n; ++i)
                acc[i] += 0.5 * pc.dt * (prev[k - 1].zeta[i] + prev[k].zeta[i]);
            next[k].eta = acc;
        }
    }

    // Cross section: linear ODE with the model's coefficients at the
    // previous iterate.
    {
        std::vector<Field> G(m), H(m);
        for (std::size_t k = 0; k < m; ++k) {
            const LinearODECoeffs lc =
                model == Model::A1 ? linear_coeffs_a1(prev[k], c)
                                   : linear_coeffs_a2(prev[k], c, pc.a2_h_sign);
            G[k] = lc.G;
            H[k] = lc.H;
        }
        const std::vector<Field> A = integrate_linear_sampled(init.A, G, H, pc.dt);
        for (std::size_t k = 0; k < m; ++k) next[k].A = A[k];
    }

    // Velocity: frozen-advection linear transport by method of lines.
    {
        std::vector<Field> Pz(m);
        for (std::size_t k = 0; k < m; ++k) Pz[k] = ddz(prev[k].P, grid);
        Field u = init.u;
        u.front() = u.back() = 0.0;
        next[0].u = u;
        for (std::size_t k = 1; k < m; ++k) {
            u = transport_step(u, prev[k - 1].u, prev[k].u, Pz[k - 1], Pz[k],
                               pc.dt, grid, c);
            next[k].u = u;
        }
    }

    for (std::size_t k = 0; k < m; ++k) zero_tissue_ends(next[k]);
    return next;
}

FixedPointResult run_fixed_point(const State& init, const PicardConfig& pc,
                                 double tol, int max_iter,
                                 const PhysConstants& c, Model model,
                                 const Grid& grid) {
    if (max_iter < 1) throw InvalidParams("picard: max_iter must be >= 1");
    FixedPointResult res;
    StateSequence prev = picard_initial(init, pc);
    double prev_diff_u = 0.0;
    int expanding = 0;
    for (int n = 1; n <= max_iter; ++n) {
        StateSequence next = picard_step(prev, init, pc, c, model, grid);
        IterationRecord rec;
        rec.n = n;
        rec.diff_u = linf_l2_diff(next, prev, &State::u, grid);
        rec.diff_eta = linf_l2_diff(next, prev, &State::eta, grid);
        rec.diff_zeta = linf_l2_diff(next, prev, &State::zeta, grid);
        rec.diff_P = linf_l2_diff(next, prev, &State::P, grid);
        rec.diff_A = linf_l2_diff(next, prev, &State::A, grid);
        if (n >= 2 && prev_diff_u > 0.0) rec.ratio = rec.diff_u / prev_diff_u;
        prev_diff_u = rec.diff_u;
        res.history.push_back(rec);
        prev = std::move(next);
        if (rec.diff_u < tol) {
            res.converged = true;
            break;
        }
        expanding = n >= 2 && rec.ratio > 1.0 ? expanding + 1 : 0;
        if (expanding >= 3)
            throw NoContraction(
                "picard: successive-difference ratios exceeded 1 for three "
                "consecutive iterations (horizon too large)");
    }
    res.seq = std::move(prev);
    return res;
}

EquicontinuityModulus equicontinuity_modulus(
    const StateSequence& seq, double dt, const Grid& grid,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    EquicontinuityModulus mod;
    auto update = [&](double& slot, const Field& a, const Field& b, double inv_dt) {
        Field d(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
        slot = std::max(slot, l2_norm(d, grid) * inv_dt);
    };
    for (auto [i, j] : pairs) {
        if (i == j) throw InvalidParams("equicontinuity: pair with equal times");
        const double inv_dt =
            1.0 / (std::abs(static_cast<double>(i) - static_cast<double>(j)) * dt);
        update(mod.u, seq[i].u, seq[j].u, inv_dt);
        update(mod.eta, seq[i].eta, seq[j].eta, inv_dt);
        update(mod.zeta, seq[i].zeta, seq[j].zeta, inv_dt);
        update(mod.P, seq[i].P, seq[j].P, inv_dt);
        update(mod.A, seq[i].A, seq[j].A, inv_dt);
    }
    return mod;
}

} // namespace csf
