#pragma once

#include "csf/errors.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace csf {

/// A scalar function sampled on the uniform grid (nz+1 nodes).
using Field = std::vector<double>;

/// Uniform spatial mesh over [0, L] with dz = L / nz.
struct Grid {
    int nz;
    double L;
    double dz;

    Grid(int nz_, double L_) : nz(nz_), L(L_), dz(L_ / nz_) {
        if (nz < 4) throw InvalidParams("grid needs nz >= 4");
        if (!(L > 0.0)) throw InvalidParams("grid needs L > 0");
    }

    std::size_t num_nodes() const { return static_cast<std::size_t>(nz) + 1; }
    double z(int i) const { return i * dz; }

    Field make_field(double value = 0.0) const { return Field(num_nodes(), value); }

    /// Sample f(z) at every node.
    template <class F>
    Field sample(F&& f) const {
        Field out(num_nodes());
        for (int i = 0; i <= nz; ++i) out[static_cast<std::size_t>(i)] = f(z(i));
        return out;
    }
};

inline double max_abs(const Field& f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
}

inline bool all_finite(const Field& f) {
    for (double v : f)
        if (!std::isfinite(v)) return false;
    return true;
}

/// Trapezoidal L2 norm over [0, L].
inline double l2_norm(const Field& f, const Grid& g) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double w = (i == 0 || i + 1 == f.size()) ? 0.5 : 1.0;
        s += w * f[i] * f[i];
    }
    return std::sqrt(s * g.dz);
}

} // namespace csf
