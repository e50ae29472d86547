#pragma once

#include "csf/closed_form.hpp"
#include "csf/constants.hpp"
#include "csf/grid.hpp"
#include "csf/model.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace csf {

enum class Scheme { FixedRK4, AdaptiveRK45 };

struct StepperConfig {
    Scheme scheme = Scheme::FixedRK4;
    double dt = 5e-3;      ///< fixed step size
    double t_final = 1.0;
    double atol = 1e-8;    ///< adaptive mode
    double rtol = 1e-8;
    double dt_init = 1e-3;
    double dt_min = 1e-13;
    double blowup_threshold = 1e8; ///< growth multiplier before declaring blow-up
    int sample_every = 1;
    bool upwind_advection = false; ///< first-order upwind for u du/dz
    A2HSign a2_h_sign = A2HSign::Continuity;

    void validate() const;
};

enum class Outcome { Completed, BlowUpDetected, Singular };

struct Trajectory {
    std::vector<State> samples;
    Outcome outcome = Outcome::Completed;
    double event_time = 0.0;       ///< blow-up / singularity time
    std::string event_field;       ///< field that triggered the event
    std::vector<std::string> events; ///< BC enforcement notes etc.
};

/// Overrides boundary values of a state in place (used by the manufactured
/// solution tests); the default enforcement comes from the closed forms.
using BoundaryFn = std::function<void(State&)>;

/// Extra source terms added to the right-hand side (manufactured solutions).
using SourceFn = std::function<StateDeriv(double, const Grid&)>;

/// Zeroes u, eta, zeta at both ends and overwrites the P, A boundary nodes
/// with their closed-form values for the initial data (b, h).
State apply_bcs(const State& s, const PhysConstants& c, Model model,
                const Field& b, const Field& h,
                A2HSign sign = A2HSign::Continuity);

/// One classical RK4 step of size cfg.dt with boundary enforcement after
/// every stage evaluation. b, h are the initial pressure/area data feeding
/// the boundary closed forms.
State step(const State& s, const StepperConfig& cfg, const PhysConstants& c,
           Model model, const Field& b, const Field& h);

struct SimulateHooks {
    std::optional<BoundaryFn> boundary; ///< replaces the default enforcement
    std::optional<SourceFn> source;
};

/// Method-of-lines integration of the chosen model from init to t_final,
/// with runtime blow-up detection. The initial state's P and A fields serve
/// as the boundary data b, h.
Trajectory simulate(const State& init, const StepperConfig& cfg,
                    const PhysConstants& c, Model model, const Grid& grid,
                    const SimulateHooks& hooks = {});

} // namespace csf
