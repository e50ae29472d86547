#pragma once

#include "csf/constants.hpp"
#include "csf/grid.hpp"

namespace csf {

enum class Model { A1, A2 };

inline const char* to_string(Model m) { return m == Model::A1 ? "a1" : "a2"; }

/// The five unknowns at one time instant.
struct State {
    double t = 0.0;
    Field u;    ///< axial velocity [m/s]
    Field eta;  ///< tissue displacement [m]
    Field zeta; ///< tissue velocity, d(eta)/dt [m/s]
    Field P;    ///< intracranial pressure [N/m^2]
    Field A;    ///< cross section [m^2]

    std::size_t num_nodes() const { return u.size(); }
    bool finite() const {
        return all_finite(u) && all_finite(eta) && all_finite(zeta) &&
               all_finite(P) && all_finite(A);
    }
};

/// Per-field time derivatives of a State.
struct StateDeriv {
    Field u, eta, zeta, P, A;
};

/// Time derivatives of Model A1 in resolved form. uz and Pz are the spatial
/// derivatives of s.u and s.P, precomputed by the caller.
/// Throws SingularState when alpha_hat*A or h_tilde+a(t)+eta drops below the
/// configured floor at any node.
StateDeriv rhs_a1(const State& s, const Field& uz, const Field& Pz,
                  const PhysConstants& c);

/// Model A2: identical except the continuity equation carries the absorption
/// term (P - P_tilde)/R instead of the u*A transport term.
StateDeriv rhs_a2(const State& s, const Field& uz, const Field& Pz,
                  const PhysConstants& c);

StateDeriv rhs(Model m, const State& s, const Field& uz, const Field& Pz,
               const PhysConstants& c);

namespace serial {
/// Reference implementations kept for the kernel-equivalence tests.
StateDeriv rhs_a1(const State& s, const Field& uz, const Field& Pz,
                  const PhysConstants& c);
StateDeriv rhs_a2(const State& s, const Field& uz, const Field& Pz,
                  const PhysConstants& c);
} // namespace serial

} // namespace csf
