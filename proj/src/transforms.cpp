#include "hornlab/transforms.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <mutex>

#include "hornlab/quadrature.hpp"

namespace hornlab {

namespace {

constexpr double kTermCut = 1e-18;

double shifted_center(int n) { return (n - 1) / 2.0; }

}  // namespace

double theta_kernel_fourier(double x, double eps, int n) {
  if (!(eps > 0.0)) fail(ErrorCode::InvalidInstance, "eps must be positive");
  const double nu = shifted_center(n);
  CompensatedSum acc;
  // Center term(s), then expand outward until the Gaussian factor dies.
  const int s0 = static_cast<int>(std::lround(nu));
  auto term = [&](long s) {
    double u = s - nu;
    return std::exp(-eps * eps * u * u) * std::cos(x * u);
  };
  acc.add(term(s0));
  for (long k = 1;; ++k) {
    double t = term(s0 + k) + term(s0 - k);
    acc.add(t);
    double u = k - 0.5;  // conservative bound for both offsets
    if (std::exp(-eps * eps * u * u) < kTermCut && k > 2) break;
  }
  return acc.value() / kTwoPi;
}

double theta_kernel_gaussian(double x, double eps, int n) {
  if (!(eps > 0.0)) fail(ErrorCode::InvalidInstance, "eps must be positive");
  const double pref = 1.0 / (2.0 * std::sqrt(kPi) * eps);
  const long m0 = std::lround(-x / kTwoPi);
  auto term = [&](long m) {
    double u = x + kTwoPi * m;
    double sgn = ((n - 1) * m) % 2 == 0 ? 1.0 : -1.0;
    return sgn * std::exp(-u * u / (4.0 * eps * eps));
  };
  CompensatedSum acc;
  acc.add(term(m0));
  for (long k = 1;; ++k) {
    double t = term(m0 + k) + term(m0 - k);
    acc.add(t);
    double u = kTwoPi * (k - 1);
    if (std::exp(-u * u / (4.0 * eps * eps)) < kTermCut && k > 1) break;
  }
  return pref * acc.value();
}

double theta_kernel(double x, double eps, int n) {
  return eps < 1.0 ? theta_kernel_gaussian(x, eps, n) : theta_kernel_fourier(x, eps, n);
}

double theta_kernel_deriv(double x, double eps, int n, int order) {
  if (order == 0) return theta_kernel(x, eps, n);
  const double nu = shifted_center(n);
  const int s0 = static_cast<int>(std::lround(nu));
  const cxd ipow = std::pow(cxd(0.0, 1.0), order);
  CompensatedCSum acc;
  auto term = [&](long s) {
    double u = s - nu;
    return std::exp(-eps * eps * u * u) * std::pow(u, order) * ipow *
           std::exp(cxd(0.0, -x * u));
  };
  acc.add(term(s0));
  for (long k = 1;; ++k) {
    acc.add(term(s0 + k) + term(s0 - k));
    double u = k - 0.5;
    // Polynomial growth u^order against the Gaussian cut.
    if (std::pow(std::abs(u) + 1.0, order) * std::exp(-eps * eps * u * u) < kTermCut &&
        k > 2)
      break;
  }
  return acc.value().real() / kTwoPi;
}

// ---------------------------------------------------------------------------
// Regularizer eigenvalue densities
// ---------------------------------------------------------------------------

namespace {

double gue_weight(const std::vector<double>& x, double eps) {
  double v = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t k = 0; k < j; ++k) v *= (x[j] - x[k]) * (x[j] - x[k]);
  double q = 0.0;
  for (double t : x) q += t * t;
  return v * std::exp(-q / (4.0 * eps * eps));
}

double mb_weight(const std::vector<double>& x, double eps) {
  // Delta(x) Delta(e^x) e^{sum x} e^{-sum x^2 / 4 eps^2}; nonnegative since
  // the two Vandermonde factors share their sign pattern.
  double v = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t k = 0; k < j; ++k)
      v *= (x[j] - x[k]) * (std::exp(x[j]) - std::exp(x[k]));
  double q = 0.0, s = 0.0;
  for (double t : x) {
    q += t * t;
    s += t;
  }
  return v * std::exp(s - q / (4.0 * eps * eps));
}

double uheat_weight(const std::vector<double>& th, double eps, int n) {
  Eigen::MatrixXd m(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) m(j, k) = theta_kernel_deriv(th[k], eps, n, j);
  double pref = 1.0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < k; ++l) pref *= 2.0 * std::sin((th[k] - th[l]) / 2.0);
  return pref * m.determinant();
}

// Nested tensor quadrature of f over [lo, hi]^n.
template <typename F>
double tensor_integral(F&& f, double lo, double hi, int n, int m) {
  std::vector<double> x, w;
  gauss_legendre_rule(m, x, w);
  const double mid = (lo + hi) / 2.0, half = (hi - lo) / 2.0;
  std::vector<double> pt(n);
  CompensatedSum acc;
  std::vector<int> idx(n, 0);
  for (;;) {
    double ww = 1.0;
    for (int d = 0; d < n; ++d) {
      pt[d] = mid + half * x[idx[d]];
      ww *= w[idx[d]] * half;
    }
    acc.add(ww * f(pt));
    int d = 0;
    while (d < n && ++idx[d] == m) idx[d++] = 0;
    if (d == n) break;
  }
  return acc.value();
}

double regularizer_norm(RegularizerKind kind, int n, double eps) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, double>, double> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(static_cast<int>(kind), n, eps);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  double z = 0.0;
  const int m = n == 3 ? 64 : 160;
  switch (kind) {
    case RegularizerKind::GueEigen: {
      double halfw = 12.0 * std::sqrt(2.0) * eps * std::sqrt(static_cast<double>(n));
      z = tensor_integral([&](const std::vector<double>& p) { return gue_weight(p, eps); },
                          -halfw, halfw, n, m);
      break;
    }
    case RegularizerKind::MbEigen: {
      double halfw = 12.0 * std::sqrt(2.0) * eps * std::sqrt(static_cast<double>(n)) +
                     4.0 * eps * eps;
      z = tensor_integral([&](const std::vector<double>& p) { return mb_weight(p, eps); },
                          -halfw, halfw, n, m);
      break;
    }
    case RegularizerKind::UheatEigen: {
      z = tensor_integral(
          [&](const std::vector<double>& p) { return uheat_weight(p, eps, n); }, -kPi,
          kPi, n, m);
      break;
    }
  }
  if (!(z > 0.0)) fail(ErrorCode::QuadratureNotConverged, "regularizer normalization");
  cache[key] = z;
  return z;
}

}  // namespace

double pdf_regularizer(RegularizerKind kind, const std::vector<double>& point,
                       RegularizerEps reg) {
  const int n = static_cast<int>(point.size());
  if (n < 1 || n > 3)
    fail(ErrorCode::UnsupportedDimension, "regularizer densities support n <= 3");
  const double z = regularizer_norm(kind, n, reg.eps);
  switch (kind) {
    case RegularizerKind::GueEigen: return gue_weight(point, reg.eps) / z;
    case RegularizerKind::MbEigen: return mb_weight(point, reg.eps) / z;
    case RegularizerKind::UheatEigen: {
      for (double t : point)
        if (t <= -kPi || t > kPi)
          fail(ErrorCode::InvalidInstance, "phase outside (-pi, pi]");
      return uheat_weight(point, reg.eps, n) / z;
    }
  }
  fail(ErrorCode::InvalidCase, "unknown regularizer");
}

// ---------------------------------------------------------------------------
// Forward transform test vectors
// ---------------------------------------------------------------------------

namespace {

cxd forward_transform_quadrature(TransformWhich which, double eps, const cvec& s,
                                 int m) {
  const int n = static_cast<int>(s.size());
  if (which == TransformWhich::Gue) {
    const double z = regularizer_norm(RegularizerKind::GueEigen, n, eps);
    double halfw = 12.0 * std::sqrt(2.0) * eps * std::sqrt(static_cast<double>(n));
    cxd acc = 0.0;
    // real and imaginary parts integrated jointly through complex phi
    std::vector<double> xr, wr;
    gauss_legendre_rule(m, xr, wr);
    // tensor loop (n <= 2 in practice)
    std::vector<int> idx(n, 0);
    std::vector<double> pt(n);
    CompensatedCSum ac;
    for (;;) {
      double ww = 1.0;
      for (int d = 0; d < n; ++d) {
        pt[d] = halfw * xr[idx[d]];
        ww *= wr[idx[d]] * halfw;
      }
      cvec xi(n);
      for (int d = 0; d < n; ++d) xi[d] = cxd(0.0, -pt[d]);
      ac.add(ww * gue_weight(pt, eps) / z * det_exp_ratio(xi, s));
      int d = 0;
      while (d < n && ++idx[d] == m) idx[d++] = 0;
      if (d == n) break;
    }
    acc = ac.value();
    return acc;
  }
  const double z = regularizer_norm(RegularizerKind::MbEigen, n, eps);
  double halfw =
      12.0 * std::sqrt(2.0) * eps * std::sqrt(static_cast<double>(n)) + 4.0 * eps * eps;
  std::vector<double> xr, wr;
  gauss_legendre_rule(m, xr, wr);
  std::vector<int> idx(n, 0);
  std::vector<double> pt(n);
  CompensatedCSum ac;
  for (;;) {
    double ww = 1.0;
    double ssum = 0.0;
    for (int d = 0; d < n; ++d) {
      pt[d] = halfw * xr[idx[d]];
      ww *= wr[idx[d]] * halfw;
      ssum += pt[d];
    }
    ac.add(ww * mb_weight(pt, eps) / z * gn_spherical(pt, s) * std::exp(-n * ssum));
    int d = 0;
    while (d < n && ++idx[d] == m) idx[d++] = 0;
    if (d == n) break;
  }
  return ac.value();
}

}  // namespace

TransformCheckReport forward_transform_check(TransformWhich which, RegularizerEps reg,
                                             const SphericalIndex& s,
                                             TruncationSpec trunc) {
  const int n = s.n();
  if (n < 1 || n > 2)
    fail(ErrorCode::UnsupportedDimension, "forward transform checks run at n <= 2");
  trunc.validate();
  const double eps = reg.eps;
  const int m = trunc.quad_pts > 0 ? trunc.quad_pts : 160;

  TransformCheckReport rep;
  rep.quadrature_value = forward_transform_quadrature(which, eps, s.values, m);
  cxd coarse = forward_transform_quadrature(which, eps, s.values, (2 * m) / 3);
  if (std::abs(coarse - rep.quadrature_value) >
      1e-7 * (1.0 + std::abs(rep.quadrature_value)))
    fail(ErrorCode::QuadratureNotConverged, "transform quadrature not converged");

  cxd closed = 1.0;
  if (which == TransformWhich::Gue) {
    for (const cxd& sj : s.values) closed *= std::exp(-eps * eps * sj * sj);
  } else {
    for (int j = 1; j <= n; ++j) closed *= std::exp(-eps * eps * j * j);
    for (const cxd& sj : s.values) {
      cxd u = sj - static_cast<double>(n) + 1.0;
      closed *= std::exp(eps * eps * u * u);
    }
  }
  rep.closed_form = closed;
  rep.rel_err = std::abs(rep.quadrature_value - closed) / std::abs(closed);
  return rep;
}

}  // namespace hornlab
