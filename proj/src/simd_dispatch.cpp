#include "hornlab/simd.hpp"

namespace hornlab::simd {

namespace {

struct Table {
  cdot_fn cdot;
  cdot_rw_fn cdot_rw;
  const char* isa;
};

Table resolve() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return {&avx2::cdot, &avx2::cdot_rw, "avx2"};
#elif defined(__aarch64__)
  return {&neon::cdot, &neon::cdot_rw, "neon"};
#endif
  return {&scalar::cdot, &scalar::cdot_rw, "scalar"};
}

const Table& table() {
  static const Table t = resolve();
  return t;
}

}  // namespace

const char* active_isa() { return table().isa; }

std::complex<double> cdot(const double* ar, const double* ai, const double* br,
                          const double* bi, std::size_t m) {
  return table().cdot(ar, ai, br, bi, m);
}

std::complex<double> cdot_rw(const double* ar, const double* ai, const double* w,
                             std::size_t m) {
  return table().cdot_rw(ar, ai, w, m);
}

}  // namespace hornlab::simd
