#include "hornlab/simd.hpp"

namespace hornlab::simd::scalar {

// Four independent accumulators, merged in fixed order: mirrors the lane
// layout of the vector variants so round-off behaviour is comparable.
std::complex<double> cdot(const double* ar, const double* ai, const double* br,
                          const double* bi, std::size_t m) {
  double sr[4] = {0, 0, 0, 0}, si[4] = {0, 0, 0, 0};
  std::size_t k = 0;
  for (; k + 4 <= m; k += 4) {
    for (int l = 0; l < 4; ++l) {
      sr[l] += ar[k + l] * br[k + l] - ai[k + l] * bi[k + l];
      si[l] += ar[k + l] * bi[k + l] + ai[k + l] * br[k + l];
    }
  }
  double tr = (sr[0] + sr[1]) + (sr[2] + sr[3]);
  double ti = (si[0] + si[1]) + (si[2] + si[3]);
  for (; k < m; ++k) {
    tr += ar[k] * br[k] - ai[k] * bi[k];
    ti += ar[k] * bi[k] + ai[k] * br[k];
  }
  return {tr, ti};
}

std::complex<double> cdot_rw(const double* ar, const double* ai, const double* w,
                             std::size_t m) {
  double sr[4] = {0, 0, 0, 0}, si[4] = {0, 0, 0, 0};
  std::size_t k = 0;
  for (; k + 4 <= m; k += 4) {
    for (int l = 0; l < 4; ++l) {
      sr[l] += ar[k + l] * w[k + l];
      si[l] += ai[k + l] * w[k + l];
    }
  }
  double tr = (sr[0] + sr[1]) + (sr[2] + sr[3]);
  double ti = (si[0] + si[1]) + (si[2] + si[3]);
  for (; k < m; ++k) {
    tr += ar[k] * w[k];
    ti += ai[k] * w[k];
  }
  return {tr, ti};
}

}  // namespace hornlab::simd::scalar
