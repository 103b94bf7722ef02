// AVX2 + FMA variants of the accumulation kernels.  Compiled with -mavx2
// -mfma for this translation unit only; selected at runtime by the
// dispatcher when the CPU reports AVX2.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "hornlab/simd.hpp"

namespace hornlab::simd::avx2 {

static inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s01 = _mm_add_pd(lo, hi);
  __m128d s = _mm_add_sd(s01, _mm_unpackhi_pd(s01, s01));
  return _mm_cvtsd_f64(s);
}

std::complex<double> cdot(const double* ar, const double* ai, const double* br,
                          const double* bi, std::size_t m) {
  __m256d accr = _mm256_setzero_pd();
  __m256d acci = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= m; k += 4) {
    __m256d xr = _mm256_loadu_pd(ar + k);
    __m256d xi = _mm256_loadu_pd(ai + k);
    __m256d yr = _mm256_loadu_pd(br + k);
    __m256d yi = _mm256_loadu_pd(bi + k);
    accr = _mm256_fmadd_pd(xr, yr, accr);
    accr = _mm256_fnmadd_pd(xi, yi, accr);
    acci = _mm256_fmadd_pd(xr, yi, acci);
    acci = _mm256_fmadd_pd(xi, yr, acci);
  }
  double tr = hsum(accr);
  double ti = hsum(acci);
  for (; k < m; ++k) {
    tr += ar[k] * br[k] - ai[k] * bi[k];
    ti += ar[k] * bi[k] + ai[k] * br[k];
  }
  return {tr, ti};
}

std::complex<double> cdot_rw(const double* ar, const double* ai, const double* w,
                             std::size_t m) {
  __m256d accr = _mm256_setzero_pd();
  __m256d acci = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= m; k += 4) {
    __m256d xw = _mm256_loadu_pd(w + k);
    accr = _mm256_fmadd_pd(_mm256_loadu_pd(ar + k), xw, accr);
    acci = _mm256_fmadd_pd(_mm256_loadu_pd(ai + k), xw, acci);
  }
  double tr = hsum(accr);
  double ti = hsum(acci);
  for (; k < m; ++k) {
    tr += ar[k] * w[k];
    ti += ai[k] * w[k];
  }
  return {tr, ti};
}

}  // namespace hornlab::simd::avx2

#endif  // x86_64
