// Core domain types shared across the library: error codes, ordered spectra,
// phase spectra, spherical transform indices and Horn problem instances.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace hornlab {

using cxd = std::complex<double>;
using cvec = std::vector<cxd>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

enum class ErrorCode {
  NotHermitian,
  NotUnitary,
  NotPositiveDefinite,
  ConvergenceFailure,
  SingularInput,
  IndexOutOfRange,
  SingularMinor,
  InvalidInstance,
  NonPositiveEigenvalue,
  DegenerateIndex,
  DegenerateSpectrum,
  LengthMismatch,
  UnsupportedDimension,
  EmptySample,
  InvalidCase,
  TruncationTooSmall,
  QuadratureNotConverged,
  UsageError,
};

class HornError : public std::runtime_error {
 public:
  HornError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw HornError(code, what);
}

// Wraps an angle into (-pi, pi].
inline double wrap_pi(double x) {
  double y = std::remainder(x, kTwoPi);  // (-pi, pi] up to the boundary case
  if (y <= -kPi) y += kTwoPi;
  return y;
}

// Wraps x into the half-open window (lo, lo + 2*pi].
inline double wrap_window(double x, double lo) {
  double y = x - lo;
  y -= kTwoPi * std::floor(y / kTwoPi);
  if (y == 0.0) y = kTwoPi;
  return lo + y;
}

// Ordered real eigenvalue vector, sorted strictly descending.  Ties within
// tol are allowed but flagged so density code can reject degenerate spectra.
struct Spectrum {
  std::vector<double> values;
  bool has_ties = false;

  int n() const { return static_cast<int>(values.size()); }
  double sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

  static Spectrum from_unsorted(std::vector<double> v, double tol = 0.0) {
    std::stable_sort(v.begin(), v.end(), std::greater<double>());
    Spectrum s{std::move(v), false};
    for (std::size_t j = 0; j + 1 < s.values.size(); ++j)
      if (s.values[j] - s.values[j + 1] <= tol) s.has_ties = true;
    return s;
  }
};

// Eigenphase vector with every angle in (-pi, pi].
struct PhaseSpectrum {
  std::vector<double> angles;

  int n() const { return static_cast<int>(angles.size()); }
  double sum() const { return std::accumulate(angles.begin(), angles.end(), 0.0); }

  static PhaseSpectrum from_unsorted(std::vector<double> v) {
    for (double& a : v) a = wrap_pi(a);
    std::stable_sort(v.begin(), v.end(), std::greater<double>());
    return PhaseSpectrum{std::move(v)};
  }
};

// Transform variable s: a complex vector on Herm(n)/Herm+(n), a strictly
// decreasing integer vector (a dominant weight) on U(n).
struct SphericalIndex {
  enum class Kind { ComplexVector, IntegerStrict };
  Kind kind = Kind::ComplexVector;
  cvec values;

  int n() const { return static_cast<int>(values.size()); }

  static SphericalIndex complex_vector(cvec v) {
    return SphericalIndex{Kind::ComplexVector, std::move(v)};
  }

  static SphericalIndex integer_strict(const std::vector<long>& v) {
    for (std::size_t j = 0; j + 1 < v.size(); ++j)
      if (v[j] <= v[j + 1])
        fail(ErrorCode::DegenerateIndex,
             "integer spherical index must be strictly decreasing");
    cvec c(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) c[j] = cxd(static_cast<double>(v[j]), 0.0);
    return SphericalIndex{Kind::IntegerStrict, std::move(c)};
  }

  std::vector<long> as_integers() const {
    std::vector<long> out(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) out[j] = std::lround(values[j].real());
    return out;
  }
};

enum class HornCase { AdditiveHermitian, MultiplicativePositive, MultiplicativeUnitary };

inline const char* to_string(HornCase c) {
  switch (c) {
    case HornCase::AdditiveHermitian: return "additive";
    case HornCase::MultiplicativePositive: return "positive";
    case HornCase::MultiplicativeUnitary: return "unitary";
  }
  return "?";
}

// Complete rank-1 Horn problem statement: case, fixed spectrum a (strictly
// descending; log-eigenvalues for the positive case, phases for the unitary
// case) and the rank-1 strength b.
struct HornInstance {
  HornCase kase = HornCase::AdditiveHermitian;
  int n = 0;
  std::vector<double> a;
  double b = 0.0;

  HornInstance() = default;
  HornInstance(HornCase k, std::vector<double> a_in, double b_in)
      : kase(k), n(static_cast<int>(a_in.size())), a(std::move(a_in)), b(b_in) {
    validate();
  }

  double a_sum() const { return std::accumulate(a.begin(), a.end(), 0.0); }

  void validate() const {
    if (n < 1) fail(ErrorCode::InvalidInstance, "empty spectrum");
    for (double v : a)
      if (!std::isfinite(v)) fail(ErrorCode::InvalidInstance, "non-finite entry in a");
    for (int j = 0; j + 1 < n; ++j)
      if (!(a[j] > a[j + 1]))
        fail(ErrorCode::InvalidInstance, "a must be strictly descending");
    if (!std::isfinite(b)) fail(ErrorCode::InvalidInstance, "non-finite b");
    if (kase == HornCase::MultiplicativeUnitary) {
      if (b == 0.0 || b <= -kPi || b > kPi)
        fail(ErrorCode::InvalidInstance, "unitary case needs b in (-pi, pi], b != 0");
      for (double v : a)
        if (v <= -kPi || v > kPi)
          fail(ErrorCode::InvalidInstance, "unitary case needs a_j in (-pi, pi]");
    } else {
      if (!(b > 0.0)) fail(ErrorCode::InvalidInstance, "b must be positive");
    }
  }
};

}  // namespace hornlab
