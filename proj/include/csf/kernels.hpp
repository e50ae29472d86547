#pragma once

#include "csf/grid.hpp"

#include <cstddef>

namespace csf {

// Nodewise kernels. The omp variants parallelize over nodes with a static
// schedule and disjoint writes, so they produce bit-identical results to the
// serial references (which the test suite checks and the benchmark times).
// Parallel execution only kicks in above kOmpGrainSize nodes; the production
// mesh (nz = 100) always runs serially.

inline constexpr std::size_t kOmpGrainSize = 32768;

namespace serial {

/// First derivative: second-order centered interior, one-sided 3-point ends.
void ddz(const double* f, double* out, std::size_t n, double dz);

/// Second derivative: centered interior, one-sided 4-point boundary rows.
void d2dz2(const double* f, double* out, std::size_t n, double dz);

/// Riccati pressure map b -> b e^{Ct} / (1 + (K/RC) b (1 - e^{Ct})).
/// Writes the denominator alongside so callers can detect sign changes.
void riccati_eval(const double* b, double* p, double* denom, std::size_t n,
                  double expCt, double k_over_rc);

/// out = a + s*b over n nodes.
void axpy(const double* a, const double* b, double s, double* out, std::size_t n);

} // namespace serial

namespace omp {

void ddz(const double* f, double* out, std::size_t n, double dz);
void d2dz2(const double* f, double* out, std::size_t n, double dz);
void riccati_eval(const double* b, double* p, double* denom, std::size_t n,
                  double expCt, double k_over_rc);
void axpy(const double* a, const double* b, double s, double* out, std::size_t n);

} // namespace omp

/// First spatial derivative of a sampled field.
Field ddz(const Field& f, const Grid& grid);

/// Second spatial derivative of a sampled field.
Field d2dz2(const Field& f, const Grid& grid);

/// a + s*b, elementwise.
Field axpy(const Field& a, const Field& b, double s);

} // namespace csf
