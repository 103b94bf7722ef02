// NEON variants (aarch64).  Two doubles per vector; two vectors in flight to
// match the four-lane accumulator layout of the other paths.

#if defined(__aarch64__)

#include <arm_neon.h>

#include "hornlab/simd.hpp"

namespace hornlab::simd::neon {

std::complex<double> cdot(const double* ar, const double* ai, const double* br,
                          const double* bi, std::size_t m) {
  float64x2_t r0 = vdupq_n_f64(0.0), r1 = vdupq_n_f64(0.0);
  float64x2_t i0 = vdupq_n_f64(0.0), i1 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= m; k += 4) {
    float64x2_t xr0 = vld1q_f64(ar + k), xr1 = vld1q_f64(ar + k + 2);
    float64x2_t xi0 = vld1q_f64(ai + k), xi1 = vld1q_f64(ai + k + 2);
    float64x2_t yr0 = vld1q_f64(br + k), yr1 = vld1q_f64(br + k + 2);
    float64x2_t yi0 = vld1q_f64(bi + k), yi1 = vld1q_f64(bi + k + 2);
    r0 = vfmaq_f64(r0, xr0, yr0);
    r0 = vfmsq_f64(r0, xi0, yi0);
    r1 = vfmaq_f64(r1, xr1, yr1);
    r1 = vfmsq_f64(r1, xi1, yi1);
    i0 = vfmaq_f64(i0, xr0, yi0);
    i0 = vfmaq_f64(i0, xi0, yr0);
    i1 = vfmaq_f64(i1, xr1, yi1);
    i1 = vfmaq_f64(i1, xi1, yr1);
  }
  double tr = vaddvq_f64(r0) + vaddvq_f64(r1);
  double ti = vaddvq_f64(i0) + vaddvq_f64(i1);
  for (; k < m; ++k) {
    tr += ar[k] * br[k] - ai[k] * bi[k];
    ti += ar[k] * bi[k] + ai[k] * br[k];
  }
  return {tr, ti};
}

std::complex<double> cdot_rw(const double* ar, const double* ai, const double* w,
                             std::size_t m) {
  float64x2_t r0 = vdupq_n_f64(0.0), r1 = vdupq_n_f64(0.0);
  float64x2_t i0 = vdupq_n_f64(0.0), i1 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= m; k += 4) {
    float64x2_t w0 = vld1q_f64(w + k), w1 = vld1q_f64(w + k + 2);
    r0 = vfmaq_f64(r0, vld1q_f64(ar + k), w0);
    r1 = vfmaq_f64(r1, vld1q_f64(ar + k + 2), w1);
    i0 = vfmaq_f64(i0, vld1q_f64(ai + k), w0);
    i1 = vfmaq_f64(i1, vld1q_f64(ai + k + 2), w1);
  }
  double tr = vaddvq_f64(r0) + vaddvq_f64(r1);
  double ti = vaddvq_f64(i0) + vaddvq_f64(i1);
  for (; k < m; ++k) {
    tr += ar[k] * w[k];
    ti += ai[k] * w[k];
  }
  return {tr, ti};
}

}  // namespace hornlab::simd::neon

#endif  // __aarch64__
