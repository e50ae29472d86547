#pragma once

#include "csf/closed_form.hpp"
#include "csf/constants.hpp"
#include "csf/grid.hpp"
#include "csf/stepper.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace csf {

enum class Posture { Supine, Upright, Mixed };

const char* to_string(Posture p);

struct ConditionResult {
    bool pass = false;
    double margin = 0.0; ///< bound minus measured quantity (positive = pass)
};

/// Pass/fail record of the global-existence conditions on initial data.
struct ExistenceReport {
    ConditionResult cond_slope;    ///< min f' + beta/rho >= 0
    ConditionResult cond_pressure; ///< pressure-datum norm below its bound
    ConditionResult cond_pzz;      ///< sup |P_zz| <= beta/(4 rho)
    Posture posture = Posture::Mixed;
    std::optional<double> predicted_blowup; ///< earliest nodewise blow-up time
    double b_norm = 0.0;     ///< Sobolev-surrogate norm of the pressure datum
    double pressure_bound = 0.0; ///< the bound cond_pressure compares against
    double eps = 1.0;        ///< Riccati-denominator minimum scaling the bound
    double sup_pzz = 0.0;

    bool all_pass() const {
        return cond_slope.pass && cond_pressure.pass && cond_pzz.pass;
    }
};

/// Discrete surrogate of the Sobolev norm: sqrt(||b||^2 + ||b'||^2 + ||b''||^2)
/// with trapezoidal L2 norms and finite-difference derivatives.
double sobolev_surrogate_norm(const Field& b, const Grid& grid);

/// Evaluates the three initial-data conditions. The pressure bound is
/// beta/(4 C_hat1 rho), scaled by eps (the minimum Riccati denominator over
/// the horizon) unless the datum is negative everywhere. t_final caps the
/// horizon; near a predicted blow-up the horizon stops just short of it.
ExistenceReport check_conditions(const Field& f, const Field& b,
                                 const Grid& grid, const PhysConstants& c,
                                 double C_hat1 = 1.0, double t_final = 1.0);

/// Coefficient convention for the pressure-curvature term of the
/// characteristic equation: the printed form uses (beta/rho) P_zz, direct
/// differentiation of the momentum balance gives (1/rho) P_zz.
enum class PzzCoeff { Printed, Derived };

struct CharacteristicResult {
    bool blew_up = false;
    double t_star = 0.0; ///< blow-up time when blew_up, else the horizon
    std::vector<std::pair<double, double>> samples; ///< (t, omega)
};

/// Integrates the velocity-gradient Riccati equation along a characteristic,
/// omega' = -omega^2 - p omega - coeff * q(t) with p = beta/rho, from
/// omega(0) = f'(lambda), reporting finite-time blow-up when |omega| diverges.
CharacteristicResult characteristic_riccati(
    double omega0, const std::function<double(double)>& q,
    const PhysConstants& c, double T, PzzCoeff coeff = PzzCoeff::Printed);

/// Closed-form blow-up time of the homogeneous (q = 0) characteristic
/// equation for omega0 < -p: t* = (1/p) ln(omega0 / (omega0 + p)).
double homogeneous_blowup_time(double omega0, double p);

struct PzzBound {
    double sup = 0.0;
    bool pass = false;
};

/// Max of |P_zz| over a uniform time ladder on [0, T] of the closed-form
/// pressure evolved from b, compared against beta/(4 rho).
PzzBound pzz_bound(const Field& b, const RiccatiParams& rp, const Grid& grid,
                   const PhysConstants& c, double T, int num_times = 64);

/// Published reference ranges the simulation outputs are compared against.
struct PhysiologyTable {
    double velocity_lo_mm_s = 50.0;
    double velocity_hi_mm_s = 80.0;
    double icp_supine_lo_mmHg = 7.0;
    double icp_supine_hi_mmHg = 15.0;
    double icp_upright_avg_mmHg = -3.4;
};

/// Pressure unit conversion pinned to 932.54 Pa = 7 mmHg.
double pa_to_mmhg(double pa);

struct PhysiologyReport {
    double peak_velocity_mm_s = 0.0;
    bool velocity_in_range = false;
    double icp_min_mmHg = 0.0;
    double icp_max_mmHg = 0.0;
    bool icp_in_supine_range = false;
    PhysiologyTable table;
};

PhysiologyReport compare_physiology(const Trajectory& traj);

} // namespace csf
