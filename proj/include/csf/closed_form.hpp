#pragma once

#include "csf/constants.hpp"
#include "csf/grid.hpp"
#include "csf/model.hpp"
#include "csf/quadrature.hpp"

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace csf {

/// Parameters of the pressure equation's closed-form solution.
struct RiccatiParams {
    double C;         ///< growth rate K (Q_p + P_tilde / R) [1/s]
    double K_over_RC; ///< K / (R C) [1/Pa]

    static RiccatiParams from_constants(const PhysConstants& c);
};

/// Closed-form pressure at one node: b e^{Ct} / (1 + (K/RC) b (1 - e^{Ct})).
/// Throws BlowUpCrossed when the denominator has changed sign on [0, t].
double riccati_scalar(double b, double t, const RiccatiParams& rp);

/// Nodewise closed-form pressure for an initial datum field.
Field riccati_pressure(const Field& b, double t, const RiccatiParams& rp);

/// Finite blow-up time of the closed form for b > 0; nullopt for b <= 0
/// (upright posture, no finite-time blow-up).
std::optional<double> blowup_time(double b_node, const RiccatiParams& rp);

/// Sign convention for the Model A2 area source term H. The printed form has
/// numerator R Q_p - P - P_tilde; the continuity equation implies
/// R Q_p - P + P_tilde. The continuity-consistent form is the default.
enum class A2HSign { Continuity, Printed };

/// Coefficients of the nodewise linear area/tissue ODEs at one time instant.
struct LinearODECoeffs {
    Field G; ///< decay rate [1/s]
    Field H; ///< source [units of the solved variable per second]
};

/// Model A1 area coefficients: G = (a'+zeta+u)/(h~+a+eta), H = Q_p/(h~+a+eta).
LinearODECoeffs linear_coeffs_a1(const State& s, const PhysConstants& c);

/// Model A2 area coefficients: G = (a'+zeta)/(h~+a+eta) (no transport term),
/// H with the selected sign convention.
LinearODECoeffs linear_coeffs_a2(const State& s, const PhysConstants& c,
                                 A2HSign sign = A2HSign::Printed);

/// Scalar linear ODE  x' + G(t) x = H(t), solved with the exact integrating
/// factor and adaptive quadrature. int_G, when provided, is the exact
/// antiderivative of G vanishing at 0 and replaces the inner quadrature.
struct ScalarLinearOde {
    std::function<double(double)> G;
    std::function<double(double)> H;
    std::function<double(double)> int_G; // optional
};

double integrate_linear_scalar(double x0, const ScalarLinearOde& ode, double t,
                               QuadratureOptions opt = {});

/// Nodewise exact solution of  dX/dt + G(t) X = H(t)  from X(0) = x0.
Field integrate_linear_ode(const Field& x0,
                           const std::function<Field(double)>& G,
                           const std::function<Field(double)>& H, double t,
                           QuadratureOptions opt = {});

/// Constant-coefficient (frozen) solution x0 e^{-G t} + (H/G)(1 - e^{-G t}),
/// used as a reference point for the time-dependent integrators.
double frozen_linear_solution(double x0, double G, double H, double t);
Field frozen_linear_solution(const Field& x0, const Field& G, const Field& H,
                             double t);

/// Uniform-time-sampled variant: coefficients G_k, H_k given at t_k = k dt;
/// returns X at every sample time (cumulative integrating factor).
std::vector<Field> integrate_linear_sampled(const Field& x0,
                                            const std::vector<Field>& G,
                                            const std::vector<Field>& H,
                                            double dt);

/// First Picard iterate of the tissue pair: eta1 = g + q t, and zeta1 from
/// the frozen-coefficient ODE with F0 = (k~/alpha^)h, J0 = b - kappa g/h - P~.
std::pair<Field, Field> basic_step_zeta_eta(const Field& g, const Field& q,
                                            const Field& b, const Field& h,
                                            double t, const PhysConstants& c);

/// Time-dependent boundary values for pressure and cross section.
struct BoundaryValues {
    double P_in, P_out; ///< pressure at z = 0 and z = L
    double A_in, A_out; ///< cross section at z = 0 and z = L
};

BoundaryValues boundary_values(double t, const Field& b, const Field& h,
                               const PhysConstants& c, Model model,
                               A2HSign sign = A2HSign::Continuity);

} // namespace csf
