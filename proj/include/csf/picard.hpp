#pragma once

#include "csf/closed_form.hpp"
#include "csf/constants.hpp"
#include "csf/grid.hpp"
#include "csf/model.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace csf {

/// A time-sampled iterate: seq[k] is the state at t_k = k * dt.
using StateSequence = std::vector<State>;

struct PicardConfig {
    double T = 0.05;             ///< horizon
    double dt = 5e-3;            ///< sample spacing (also the transport step)
    A2HSign a2_h_sign = A2HSign::Continuity;

    std::size_t num_samples() const;
    void validate() const;
};

/// Per-iteration convergence diagnostics: successive-difference norms in
/// max-over-time of the trapezoidal spatial L2 norm.
struct IterationRecord {
    int n = 0;
    double diff_u = 0.0;
    double diff_eta = 0.0;
    double diff_zeta = 0.0;
    double diff_P = 0.0;
    double diff_A = 0.0;
    double ratio = 0.0; ///< diff_u(n) / diff_u(n-1), defined for n >= 2
};

/// Iterate 0: the initial data held constant in time.
StateSequence picard_initial(const State& init, const PicardConfig& pc);

/// One successive-approximation sweep: builds iterate n+1 from iterate n and
/// the initial data. The pressure comes from its closed form, the tissue pair
/// and the cross section from sampled linear ODE solves with coefficients
/// frozen at iterate n, and the velocity from a linear transport solve with
/// the advection field frozen at iterate n.
StateSequence picard_step(const StateSequence& prev, const State& init,
                          const PicardConfig& pc, const PhysConstants& c,
                          Model model, const Grid& grid);

struct FixedPointResult {
    StateSequence seq;
    std::vector<IterationRecord> history;
    bool converged = false;
};

/// Iterates picard_step until diff_u < tol or max_iter sweeps. Throws
/// NoContraction when the u-difference ratio stays above 1 for three
/// consecutive iterations (the horizon is too large).
FixedPointResult run_fixed_point(const State& init, const PicardConfig& pc,
                                 double tol, int max_iter,
                                 const PhysConstants& c, Model model,
                                 const Grid& grid);

/// Empirical Lipschitz-in-time constant per field:
/// max over the given sample-index pairs of ||X(t_i) - X(t_j)||_2 / |t_i - t_j|.
struct EquicontinuityModulus {
    double u = 0.0, eta = 0.0, zeta = 0.0, P = 0.0, A = 0.0;
};

EquicontinuityModulus equicontinuity_modulus(
    const StateSequence& seq, double dt, const Grid& grid,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

} // namespace csf
