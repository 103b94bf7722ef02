// Runtime-dispatched SIMD kernels for the hot accumulation loops (character
// lattice series, oscillatory quadrature).  Complex data is passed as split
// real/imaginary arrays.  Each variant keeps independent lane accumulators
// merged in a fixed order, so results are reproducible per code path; the
// scalar reference path is always available and equivalence-tested against
// the vector paths.

#pragma once

#include <complex>
#include <cstddef>

namespace hornlab::simd {

// sum_k (ar[k] + i*ai[k]) * (br[k] + i*bi[k])
using cdot_fn = std::complex<double> (*)(const double*, const double*,
                                         const double*, const double*,
                                         std::size_t);

// sum_k (ar[k] + i*ai[k]) * w[k]
using cdot_rw_fn = std::complex<double> (*)(const double*, const double*,
                                            const double*, std::size_t);

namespace scalar {
std::complex<double> cdot(const double* ar, const double* ai, const double* br,
                          const double* bi, std::size_t m);
std::complex<double> cdot_rw(const double* ar, const double* ai, const double* w,
                             std::size_t m);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
std::complex<double> cdot(const double* ar, const double* ai, const double* br,
                          const double* bi, std::size_t m);
std::complex<double> cdot_rw(const double* ar, const double* ai, const double* w,
                             std::size_t m);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
std::complex<double> cdot(const double* ar, const double* ai, const double* br,
                          const double* bi, std::size_t m);
std::complex<double> cdot_rw(const double* ar, const double* ai, const double* w,
                             std::size_t m);
}  // namespace neon
#endif

// Active instruction set, resolved once at first use: "avx2", "neon" or "scalar".
const char* active_isa();

// Dispatched entry points.
std::complex<double> cdot(const double* ar, const double* ai, const double* br,
                          const double* bi, std::size_t m);
std::complex<double> cdot_rw(const double* ar, const double* ai, const double* w,
                             std::size_t m);

}  // namespace hornlab::simd
