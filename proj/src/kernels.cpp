#include "csf/kernels.hpp"

#include "csf/errors.hpp"

namespace csf {

namespace serial {

void ddz(const double* f, double* out, std::size_t n, double dz) {
    const double inv2 = 1.0 / (2.0 * dz);
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2;
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv2;
    out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2;
}

void d2dz2(const double* f, double* out, std::size_t n, double dz) {
    const double inv = 1.0 / (dz * dz);
    out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * inv;
    for (std::size_t i = 1; i + 1 < n; ++i)
        out[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * inv;
    out[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) * inv;
}

void riccati_eval(const double* b, double* p, double* denom, std::size_t n,
                  double expCt, double k_over_rc) {
    for (std::size_t i = 0; i < n; ++i) {
        const double d = 1.0 + k_over_rc * b[i] * (1.0 - expCt);
        denom[i] = d;
        p[i] = b[i] * expCt / d;
    }
}

void axpy(const double* a, const double* b, double s, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + s * b[i];
}

} // namespace serial

namespace omp {

void ddz(const double* f, double* out, std::size_t n, double dz) {
    const double inv2 = 1.0 / (2.0 * dz);
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2;
#pragma omp parallel for schedule(static) if (n > kOmpGrainSize)
    for (std::size_t i = 1; i < n - 1; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv2;
    out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2;
}

void d2dz2(const double* f, double* out, std::size_t n, double dz) {
    const double inv = 1.0 / (dz * dz);
    out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * inv;
#pragma omp parallel for schedule(static) if (n > kOmpGrainSize)
    for (std::size_t i = 1; i < n - 1; ++i)
        out[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * inv;
    out[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) * inv;
}

void riccati_eval(const double* b, double* p, double* denom, std::size_t n,
                  double expCt, double k_over_rc) {
#pragma omp parallel for schedule(static) if (n > kOmpGrainSize)
    for (std::size_t i = 0; i < n; ++i) {
        const double d = 1.0 + k_over_rc * b[i] * (1.0 - expCt);
        denom[i] = d;
        p[i] = b[i] * expCt / d;
    }
}

void axpy(const double* a, const double* b, double s, double* out, std::size_t n) {
#pragma omp parallel for schedule(static) if (n > kOmpGrainSize)
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + s * b[i];
}

} // namespace omp

Field ddz(const Field& f, const Grid& grid) {
    if (f.size() != grid.num_nodes())
        throw InvalidParams("ddz: field length does not match grid");
    Field out(f.size());
    omp::ddz(f.data(), out.data(), f.size(), grid.dz);
    return out;
}

Field d2dz2(const Field& f, const Grid& grid) {
    if (f.size() != grid.num_nodes())
        throw InvalidParams("d2dz2: field length does not match grid");
    Field out(f.size());
    omp::d2dz2(f.data(), out.data(), f.size(), grid.dz);
    return out;
}

Field axpy(const Field& a, const Field& b, double s) {
    Field out(a.size());
    omp::axpy(a.data(), b.data(), s, out.data(), a.size());
    return out;
}

} // namespace csf
