#include "csf/model.hpp"

#include "csf/errors.hpp"
#include "csf/kernels.hpp"

#include <cmath>
#include <string>

namespace csf {

namespace {

void check_denominators(const State& s, double at, double aht,
                        const PhysConstants& c) {
    const std::size_t n = s.num_nodes();
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(c.alpha_hat * s.A[i]) < c.denominator_floor)
            throw SingularState("alpha_hat*A below floor at node " +
                                std::to_string(i) + ", t=" + std::to_string(s.t));
        if (std::abs(aht + s.eta[i]) < c.denominator_floor)
            throw SingularState("h_tilde+a(t)+eta below floor at node " +
                                std::to_string(i) + ", t=" + std::to_string(s.t));
    }
    (void)at;
}

template <bool kModelA1, bool kParallel>
StateDeriv rhs_impl(const State& s, const Field& uz, const Field& Pz,
                    const PhysConstants& c) {
    const double at = forcing(s.t, c);
    const double apt = forcing_deriv(s.t, c);
    const double aht = c.h_tilde + at;
    check_denominators(s, at, aht, c);

    const std::size_t n = s.num_nodes();
    StateDeriv d;
    d.u.resize(n);
    d.eta.resize(n);
    d.zeta.resize(n);
    d.P.resize(n);
    d.A.resize(n);

    const double k_over_r = c.K_comp / c.R_abs;
    const double riccati_lin = k_over_r * (c.R_abs * c.Q_p + c.P_tilde);
    const double beta_over_rho = c.beta / c.rho;
    const double inv_rho = 1.0 / c.rho;

#pragma omp parallel for schedule(static) if (kParallel && n > kOmpGrainSize)
    for (std::size_t i = 0; i < n; ++i) {
        const double A = s.A[i];
        const double P = s.P[i];
        const double eta = s.eta[i];
        const double zeta = s.zeta[i];
        const double u = s.u[i];
        const double elast_den = c.alpha_hat * A;
        const double cont_den = aht + eta;

        d.eta[i] = zeta;
        d.zeta[i] = (A * P - A * c.P_tilde - c.k_tilde * zeta - c.kappa * eta) /
                    elast_den;
        if (kModelA1) {
            d.A[i] = (c.Q_p - (apt + zeta + u) * A) / cont_den;
        } else {
            d.A[i] = (c.Q_p - (apt + zeta) * A - (P - c.P_tilde) / c.R_abs) /
                     cont_den;
        }
        d.u[i] = -u * uz[i] - beta_over_rho * u - inv_rho * Pz[i];
        d.P[i] = k_over_r * P * P + riccati_lin * P;
    }
    return d;
}

} // namespace

StateDeriv rhs_a1(const State& s, const Field& uz, const Field& Pz,
                  const PhysConstants& c) {
    return rhs_impl<true, true>(s, uz, Pz, c);
}

StateDeriv rhs_a2(const State& s, const Field& uz, const Field& Pz,
                  const PhysConstants& c) {
    return rhs_impl<false, true>(s, uz, Pz, c);
}

StateDeriv rhs(Model m, const State& s, const Field& uz, const Field& Pz,
               const PhysConstants& c) {
    return m == Model::A1 ? rhs_a1(s, uz, Pz, c) : rhs_a2(s, uz, Pz, c);
}

namespace serial {

StateDeriv rhs_a1(const State& s, const Field& uz, const Field& Pz,
                  const PhysConstants& c) {
    return rhs_impl<true, false>(s, uz, Pz, c);
}

StateDeriv rhs_a2(const State& s, const Field& uz, const Field& Pz,
                  const PhysConstants& c) {
    return rhs_impl<false, false>(s, uz, Pz, c);
}

} // namespace serial

} // namespace csf
