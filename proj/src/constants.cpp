#include "csf/constants.hpp"

#include "csf/errors.hpp"

#include <cmath>

namespace csf {

void PhysConstants::validate() const {
    if (!(rho > 0.0)) throw InvalidParams("rho must be positive");
    if (!(h_tilde > 0.0)) throw InvalidParams("h_tilde must be positive");
    if (!(R_abs > 0.0)) throw InvalidParams("R_abs must be positive");
    if (!(L > 0.0)) throw InvalidParams("L must be positive");
    if (!(r_foramen > 0.0)) throw InvalidParams("r_foramen must be positive");
    if (alpha_hat != rho * delta)
        throw InvalidParams("alpha_hat must equal rho*delta exactly");
    if (beta != 8.0 * mu / (r_foramen * r_foramen))
        throw InvalidParams("beta must equal 8*mu/r^2 exactly");
    if (!(denominator_floor > 0.0))
        throw InvalidParams("denominator_floor must be positive");
}

PhysConstants PhysConstants::defaults() {
    PhysConstants c{};
    c.rho = 998.2;
    c.mu = 1.003e-3;
    // Radius calibrated so beta/rho ~ 100 s^-1: strong enough Poiseuille
    // damping for the velocity-slope condition to hold with margin, weak
    // enough that the default time step resolves it.
    c.r_foramen = 2.8352e-4;
    // Placeholder tissue width; chosen large so that alpha_hat*A clears the
    // singularity floor even where the reference area datum crosses zero.
    c.delta = 100.0;
    // Elasticity/compliance are never tabulated; a nonzero value conflicts
    // with area data that vanish at a mesh node, so the placeholders are 0.
    c.kappa = 0.0;
    c.k_tilde = 0.0;
    c.h_tilde = 0.1;
    c.Q_p = 0.35e-6 / 60.0; // 0.35 cm^3/min
    // R, P_tilde and K are placeholders calibrated jointly so that
    // R*Q_p + P_tilde = 3 Pa and the pressure growth rate is 1.5 s^-1.
    c.R_abs = 3.0e8;
    c.P_tilde = 1.25;
    c.K_comp = 1.5e8;
    c.alpha_bar = 1.0e-4;
    c.omega = 7.33; // ~70 beats/min
    c.L = 1.0;
    c.baseline_pressure = 500.0;
    c.denominator_floor = 1e-12;
    c.refresh_derived();
    return c;
}

} // namespace csf
