#pragma once

#include <cmath>

namespace csf {

/// Physical constants of the compartment models. Units are SI throughout.
///
/// Only rho, mu, Q_p and the baseline pressure have literature values; the
/// rest are calibration placeholders that any config file may override (see
/// config/defaults.cfg for the documented choices).
struct PhysConstants {
    double rho;        ///< fluid density [kg/m^3]
    double delta;      ///< tissue width [m]
    double alpha_hat;  ///< rho * delta [kg/m^2]
    double kappa;      ///< tissue elasticity [N/m]
    double k_tilde;    ///< tissue compliance [N s/m]
    double r_foramen;  ///< foramen/aqueduct radius [m]
    double mu;         ///< fluid viscosity [Pa s]
    double beta;       ///< Poiseuille friction, 8 mu / r^2 [N/m^3]
    double h_tilde;    ///< compartment height [m]
    double Q_p;        ///< CSF production rate [m^3/s]
    double R_abs;      ///< resistance to absorption [Pa s/m^3]
    double alpha_bar;  ///< choroid expansion amplitude [m]
    double omega;      ///< heart rate frequency [rad/s]
    double K_comp;     ///< pressure-equation constant [1/m^3]
    double P_tilde;    ///< parenchyma pressure [N/m^2]
    double L;          ///< compartment length [m]

    double baseline_pressure; ///< reference CSF pressure for reporting [Pa]

    /// Magnitude below which a model denominator is declared singular.
    double denominator_floor;

    /// Growth rate of the pressure equation, K (Q_p + P_tilde / R).
    double riccati_growth() const { return K_comp * (Q_p + P_tilde / R_abs); }

    /// Recompute the derived fields from their primary inputs.
    void refresh_derived() {
        alpha_hat = rho * delta;
        beta = 8.0 * mu / (r_foramen * r_foramen);
    }

    /// Throws InvalidParams when a positivity or consistency invariant fails.
    void validate() const;

    static PhysConstants defaults();
};

/// Choroid plexus periodic motion driving both models.
inline double forcing(double t, const PhysConstants& c) {
    const double half_pi = std::asin(1.0);
    return c.alpha_bar * (1.3 + std::sin(c.omega * t - half_pi) -
                          0.5 * std::cos(2.0 * c.omega * t - half_pi));
}

/// Exact time derivative of forcing().
inline double forcing_deriv(double t, const PhysConstants& c) {
    const double half_pi = std::asin(1.0);
    return c.alpha_bar * (c.omega * std::cos(c.omega * t - half_pi) +
                          c.omega * std::sin(2.0 * c.omega * t - half_pi));
}

/// Absorption outflow through the venous sinus, (P - P_tilde) / R.
inline double absorption(double P, const PhysConstants& c) {
    return (P - c.P_tilde) / c.R_abs;
}

} // namespace csf
