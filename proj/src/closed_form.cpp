#include "csf/closed_form.hpp"

#include "csf/errors.hpp"
#include "csf/kernels.hpp"

#include <cmath>
#include <string>

namespace csf {

RiccatiParams RiccatiParams::from_constants(const PhysConstants& c) {
    const double C = c.riccati_growth();
    if (C == 0.0)
        throw InvalidParams("riccati growth rate C is zero; closed form invalid");
    return RiccatiParams{C, c.K_comp / (c.R_abs * C)};
}

double riccati_scalar(double b, double t, const RiccatiParams& rp) {
    const double e = std::exp(rp.C * t);
    const double denom = 1.0 + rp.K_over_RC * b * (1.0 - e);
    // denom(0) = 1 and denom is monotone in t, so a non-positive value means
    // the root was crossed somewhere on [0, t].
    if (!(denom > 0.0))
        throw BlowUpCrossed("riccati denominator crossed zero by t=" +
                            std::to_string(t));
    return b * e / denom;
}

Field riccati_pressure(const Field& b, double t, const RiccatiParams& rp) {
    Field p(b.size()), denom(b.size());
    omp::riccati_eval(b.data(), p.data(), denom.data(), b.size(),
                      std::exp(rp.C * t), rp.K_over_RC);
    for (std::size_t i = 0; i < denom.size(); ++i)
        if (!(denom[i] > 0.0))
            throw BlowUpCrossed("riccati denominator crossed zero at node " +
                                std::to_string(i) + " by t=" + std::to_string(t));
    return p;
}

std::optional<double> blowup_time(double b_node, const RiccatiParams& rp) {
    if (b_node <= 0.0) return std::nullopt;
    if (rp.C <= 0.0 || rp.K_over_RC <= 0.0)
        throw InvalidParams("blowup_time needs C > 0 and K > 0 for b > 0");
    // RC/(K b) = 1/(K_over_RC * b)
    return std::log(1.0 / (rp.K_over_RC * b_node) + 1.0) / rp.C;
}

namespace {

Field continuity_denominator(const State& s, const PhysConstants& c) {
    const double aht = c.h_tilde + forcing(s.t, c);
    Field den(s.num_nodes());
    for (std::size_t i = 0; i < den.size(); ++i) {
        den[i] = aht + s.eta[i];
        if (std::abs(den[i]) < c.denominator_floor)
            throw SingularState("h_tilde+a(t)+eta below floor at node " +
                                std::to_string(i));
    }
    return den;
}

} // namespace

LinearODECoeffs linear_coeffs_a1(const State& s, const PhysConstants& c) {
    const Field den = continuity_denominator(s, c);
    const double apt = forcing_deriv(s.t, c);
    LinearODECoeffs lc;
    lc.G.resize(den.size());
    lc.H.resize(den.size());
    for (std::size_t i = 0; i < den.size(); ++i) {
        lc.G[i] = (apt + s.zeta[i] + s.u[i]) / den[i];
        lc.H[i] = c.Q_p / den[i];
    }
    return lc;
}

LinearODECoeffs linear_coeffs_a2(const State& s, const PhysConstants& c,
                                 A2HSign sign) {
    const Field den = continuity_denominator(s, c);
    const double apt = forcing_deriv(s.t, c);
    const double pt = sign == A2HSign::Printed ? -c.P_tilde : c.P_tilde;
    LinearODECoeffs lc;
    lc.G.resize(den.size());
    lc.H.resize(den.size());
    for (std::size_t i = 0; i < den.size(); ++i) {
        lc.G[i] = (apt + s.zeta[i]) / den[i];
        lc.H[i] = (c.R_abs * c.Q_p - s.P[i] + pt) / (c.R_abs * den[i]);
    }
    return lc;
}

double integrate_linear_scalar(double x0, const ScalarLinearOde& ode, double t,
                               QuadratureOptions opt) {
    auto int_G = [&](double s) {
        if (ode.int_G) return ode.int_G(s);
        return integrate(ode.G, 0.0, s, opt);
    };
    const double IG_t = int_G(t);
    const double integral =
        integrate([&](double s) { return ode.H(s) * std::exp(int_G(s)); }, 0.0,
                  t, opt);
    return std::exp(-IG_t) * (x0 + integral);
}

Field integrate_linear_ode(const Field& x0,
                           const std::function<Field(double)>& G,
                           const std::function<Field(double)>& H, double t,
                           QuadratureOptions opt) {
    Field out(x0.size());
    for (std::size_t i = 0; i < x0.size(); ++i) {
        ScalarLinearOde ode;
        ode.G = [&, i](double s) { return G(s)[i]; };
        ode.H = [&, i](double s) { return H(s)[i]; };
        out[i] = integrate_linear_scalar(x0[i], ode, t, opt);
    }
    return out;
}

double frozen_linear_solution(double x0, double G, double H, double t) {
    if (G == 0.0) return x0 + H * t;
    const double e = std::exp(-G * t);
    return x0 * e + (H / G) * (1.0 - e);
}

Field frozen_linear_solution(const Field& x0, const Field& G, const Field& H,
                             double t) {
    Field out(x0.size());
    for (std::size_t i = 0; i < x0.size(); ++i)
        out[i] = frozen_linear_solution(x0[i], G[i], H[i], t);
    return out;
}

std::vector<Field> integrate_linear_sampled(const Field& x0,
                                            const std::vector<Field>& G,
                                            const std::vector<Field>& H,
                                            double dt) {
    const std::size_t steps = G.size();
    const std::size_t n = x0.size();
    std::vector<Field> X(steps, Field(n));
    // Cumulative trapezoid of G gives the integrating factor at each sample;
    // a second cumulative trapezoid accumulates H e^{int G}.
    Field IG(n, 0.0), acc(n, 0.0), prev_w(n);
    for (std::size_t i = 0; i < n; ++i) prev_w[i] = H[0][i]; // e^{IG(0)} = 1
    X[0] = x0;
    for (std::size_t k = 1; k < steps; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            IG[i] += 0.5 * dt * (G[k - 1][i] + G[k][i]);
            const double w = H[k][i] * std::exp(IG[i]);
            acc[i] += 0.5 * dt * (prev_w[i] + w);
            prev_w[i] = w;
            X[k][i] = std::exp(-IG[i]) * (x0[i] + acc[i]);
        }
    }
    return X;
}

std::pair<Field, Field> basic_step_zeta_eta(const Field& g, const Field& q,
                                            const Field& b, const Field& h,
                                            double t, const PhysConstants& c) {
    const std::size_t n = g.size();
    Field eta1(n), F0(n), J0(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(h[i]) < c.denominator_floor)
            throw SingularState("basic step: area datum vanishes at node " +
                                std::to_string(i));
        eta1[i] = g[i] + q[i] * t;
        F0[i] = (c.k_tilde / c.alpha_hat) * h[i];
        J0[i] = (b[i] - c.kappa * g[i] / h[i] - c.P_tilde) / c.alpha_hat;
    }
    Field zeta1 = frozen_linear_solution(q, F0, J0, t);
    return {std::move(eta1), std::move(zeta1)};
}

namespace {

// C -> 0 limit of the pressure closed form: P = b / (1 - (K/R) b t).
double riccati_scalar_flat(double b, double t, const PhysConstants& c) {
    const double denom = 1.0 - (c.K_comp / c.R_abs) * b * t;
    if (!(denom > 0.0))
        throw BlowUpCrossed("riccati denominator crossed zero by t=" +
                            std::to_string(t));
    return b / denom;
}

} // namespace

BoundaryValues boundary_values(double t, const Field& b, const Field& h,
                               const PhysConstants& c, Model model,
                               A2HSign sign) {
    const bool flat = c.riccati_growth() == 0.0;
    auto pressure_at = [&](double b_end, double s) {
        if (flat) return riccati_scalar_flat(b_end, s, c);
        return riccati_scalar(b_end, s, RiccatiParams::from_constants(c));
    };
    BoundaryValues bv{};
    bv.P_in = pressure_at(b.front(), t);
    bv.P_out = pressure_at(b.back(), t);

    const double a0 = forcing(0.0, c);
    const double pt = sign == A2HSign::Printed ? -c.P_tilde : c.P_tilde;
    auto area_at = [&](double b_end, double h_end) {
        ScalarLinearOde ode;
        ode.G = [&c](double s) { return forcing_deriv(s, c) / (c.h_tilde + forcing(s, c)); };
        // G = d/dt log(h~ + a(t)), so the integrating factor is exact.
        ode.int_G = [&c, a0](double s) {
            return std::log((c.h_tilde + forcing(s, c)) / (c.h_tilde + a0));
        };
        if (model == Model::A1) {
            ode.H = [&c](double s) { return c.Q_p / (c.h_tilde + forcing(s, c)); };
        } else {
            ode.H = [&c, &pressure_at, b_end, pt](double s) {
                const double P = pressure_at(b_end, s);
                return (c.R_abs * c.Q_p - P + pt) /
                       (c.R_abs * (c.h_tilde + forcing(s, c)));
            };
        }
        return integrate_linear_scalar(h_end, ode, t);
    };
    bv.A_in = area_at(b.front(), h.front());
    bv.A_out = area_at(b.back(), h.back());
    return bv;
}

} // namespace csf
