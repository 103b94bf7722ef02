#include "hornlab/densities.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "hornlab/quadrature.hpp"

namespace hornlab {

namespace {

constexpr double kBoundaryTol = 1e-9;  // "min |a_k - c_l| > 0" guard

double vdm_real(const std::vector<double>& v) {
  double p = 1.0;
  for (std::size_t k = 0; k < v.size(); ++k)
    for (std::size_t l = 0; l < k; ++l) p *= v[k] - v[l];
  return p;
}

void check_boundary_linear(const std::vector<double>& a, const std::vector<double>& c) {
  for (double av : a)
    for (double cv : c)
      if (std::abs(av - cv) < kBoundaryTol)
        fail(ErrorCode::DegenerateSpectrum, "c touches a within boundary tolerance");
}

void check_boundary_circular(const std::vector<double>& a, const std::vector<double>& c) {
  for (double av : a)
    for (double cv : c)
      if (std::abs(wrap_pi(av - cv)) < kBoundaryTol)
        fail(ErrorCode::DegenerateSpectrum, "c touches a (mod 2 pi) within tolerance");
}

double factorial(int k) {
  double f = 1.0;
  for (int j = 2; j <= k; ++j) f *= j;
  return f;
}

// Effective constraint total in unwrapped coordinates: on the circular
// support exactly one 2 pi branch is consistent, selected by the sign of b.
double effective_total(const HornInstance& inst) {
  if (inst.kase == HornCase::MultiplicativeUnitary)
    return inst.a_sum() + (inst.b > 0.0 ? inst.b : inst.b + kTwoPi);
  return inst.a_sum() + inst.b;
}

std::vector<double> unwrap_into_window(const std::vector<double>& c, double lo) {
  std::vector<double> u(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) u[j] = wrap_window(c[j], lo);
  std::sort(u.begin(), u.end(), std::greater<double>());
  return u;
}

}  // namespace

SupportCheck interlaces(const Spectrum& a, const Spectrum& c) {
  if (a.n() != c.n()) fail(ErrorCode::LengthMismatch, "spectra of different length");
  const int n = a.n();
  double margin = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    margin = std::min(margin, c.values[j] - a.values[j]);
    if (j + 1 < n) margin = std::min(margin, a.values[j] - c.values[j + 1]);
  }
  return {margin > 0.0, margin};
}

SupportCheck circular_interlaces(const PhaseSpectrum& a, const PhaseSpectrum& c,
                                 double b) {
  if (a.n() != c.n()) fail(ErrorCode::LengthMismatch, "spectra of different length");
  if (b == 0.0) fail(ErrorCode::InvalidInstance, "b must be nonzero");
  const int n = a.n();
  const double an = *std::min_element(a.angles.begin(), a.angles.end());
  std::vector<double> as = a.angles;
  std::sort(as.begin(), as.end(), std::greater<double>());
  std::vector<double> u = unwrap_into_window(c.angles, an);

  double margin = kTwoPi + an - u[0];  // 2 pi + a_n >= c_1
  for (int j = 0; j < n; ++j) {
    margin = std::min(margin, u[j] - as[j]);
    if (j + 1 < n) margin = std::min(margin, as[j] - u[j + 1]);
  }
  return {margin > 0.0, margin};
}

ConstrainedPoint resolve_constraint(const std::vector<double>& free,
                                    const HornInstance& inst) {
  if (static_cast<int>(free.size()) != inst.n - 1)
    fail(ErrorCode::LengthMismatch, "need n-1 free coordinates");
  double sum_free = std::accumulate(free.begin(), free.end(), 0.0);
  double resolved = inst.a_sum() + inst.b - sum_free;
  if (inst.kase == HornCase::MultiplicativeUnitary)
    resolved = wrap_window(resolved, inst.a.back());
  return {free, resolved, inst.kase};
}

double pdf_additive(const std::vector<double>& free, const HornInstance& inst) {
  if (inst.kase != HornCase::AdditiveHermitian)
    fail(ErrorCode::InvalidCase, "instance is not additive");
  if (inst.n < 2) fail(ErrorCode::UnsupportedDimension, "density needs n >= 2");
  std::vector<double> c = resolve_constraint(free, inst).full();
  check_boundary_linear(inst.a, c);
  Spectrum cs{c, false}, as{inst.a, false};
  if (!interlaces(as, cs).ok) return 0.0;
  const int n = inst.n;
  return factorial(n - 1) / std::pow(inst.b, n - 1) * vdm_real(c) / vdm_real(inst.a);
}

double pdf_mult_pos(const std::vector<double>& free, const HornInstance& inst) {
  if (inst.kase != HornCase::MultiplicativePositive)
    fail(ErrorCode::InvalidCase, "instance is not multiplicative-positive");
  if (inst.n < 2) fail(ErrorCode::UnsupportedDimension, "density needs n >= 2");
  std::vector<double> c = resolve_constraint(free, inst).full();
  check_boundary_linear(inst.a, c);
  Spectrum cs{c, false}, as{inst.a, false};
  if (!interlaces(as, cs).ok) return 0.0;
  const int n = inst.n;
  std::vector<double> ec(n), ea(n);
  for (int j = 0; j < n; ++j) {
    ec[j] = std::exp(c[j]);
    ea[j] = std::exp(inst.a[j]);
  }
  return factorial(n - 1) / std::pow(std::expm1(inst.b), n - 1) * vdm_real(ec) /
         vdm_real(ea);
}

double pdf_mult_unitary(const std::vector<double>& free, const HornInstance& inst) {
  if (inst.kase != HornCase::MultiplicativeUnitary)
    fail(ErrorCode::InvalidCase, "instance is not multiplicative-unitary");
  if (inst.n < 2) fail(ErrorCode::UnsupportedDimension, "density needs n >= 2");
  const int n = inst.n;
  ConstrainedPoint pt = resolve_constraint(free, inst);
  std::vector<double> u = unwrap_into_window(pt.full(), inst.a.back());
  check_boundary_circular(inst.a, u);
  std::vector<double> cw(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) cw[j] = wrap_pi(u[j]);
  if (!circular_interlaces(PhaseSpectrum{inst.a}, PhaseSpectrum{cw}, inst.b).ok)
    return 0.0;
  // Phase-factored form: every |e^{i p} - e^{i q}| becomes 2 |sin((p-q)/2)|,
  // keeping the density manifestly real.
  double num = 1.0, den = 1.0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < k; ++l) {
      num *= std::abs(2.0 * std::sin((u[k] - u[l]) / 2.0));
      den *= std::abs(2.0 * std::sin((inst.a[k] - inst.a[l]) / 2.0));
    }
  den *= std::pow(std::abs(2.0 * std::sin(inst.b / 2.0)), n - 1);
  return factorial(n - 1) * num / den;
}

double pdf_joint(const std::vector<double>& free, const HornInstance& inst) {
  switch (inst.kase) {
    case HornCase::AdditiveHermitian: return pdf_additive(free, inst);
    case HornCase::MultiplicativePositive: return pdf_mult_pos(free, inst);
    case HornCase::MultiplicativeUnitary: return pdf_mult_unitary(free, inst);
  }
  fail(ErrorCode::InvalidCase, "unknown case");
}

void marginal_support(const HornInstance& inst, int k, double& lo, double& hi) {
  const int n = inst.n;
  if (n < 2 || n > 3) fail(ErrorCode::UnsupportedDimension, "marginals need n in {2,3}");
  if (k < 0 || k >= n - 1) fail(ErrorCode::IndexOutOfRange, "free coordinate index");
  const double T = effective_total(inst);
  const bool circ = inst.kase == HornCase::MultiplicativeUnitary;
  if (n == 2) {
    lo = std::max(inst.a[0], T - inst.a[0]);
    hi = T - inst.a[1];
    if (circ) hi = std::min(hi, kTwoPi + inst.a[1]);
  } else if (k == 0) {
    lo = inst.a[0];
    hi = T - inst.a[1] - inst.a[2];
    if (circ) hi = std::min(hi, kTwoPi + inst.a[2]);
  } else {
    lo = inst.a[1];
    hi = inst.a[0];
  }
}

double pdf_marginal(int k, double t, const HornInstance& inst, int quad_pts) {
  const int n = inst.n;
  if (n < 2 || n > 3) fail(ErrorCode::UnsupportedDimension, "marginals need n in {2,3}");
  if (n == 2) {
    double lo, hi;
    marginal_support(inst, 0, lo, hi);
    if (t <= lo + kBoundaryTol || t >= hi - kBoundaryTol) return 0.0;
    return pdf_joint({t}, inst);
  }
  const double T = effective_total(inst);
  const bool circ = inst.kase == HornCase::MultiplicativeUnitary;
  double wlo, whi;
  if (k == 0) {
    wlo = std::max(inst.a[1], T - t - inst.a[1]);
    whi = std::min(inst.a[0], T - t - inst.a[2]);
  } else {
    wlo = std::max(inst.a[0], T - t - inst.a[1]);
    whi = T - t - inst.a[2];
    if (circ) whi = std::min(whi, kTwoPi + inst.a[2]);
  }
  wlo += kBoundaryTol;
  whi -= kBoundaryTol;
  if (!(whi > wlo)) return 0.0;
  auto f = [&](double w) {
    return (k == 0) ? pdf_joint({t, w}, inst) : pdf_joint({w, t}, inst);
  };
  return gauss_legendre(f, wlo, whi, quad_pts);
}

MarginalCdf::MarginalCdf(const HornInstance& inst, int k, int quad_pts, int grid) {
  if (quad_pts < 8) fail(ErrorCode::InvalidInstance, "quad_pts too small");
  marginal_support(inst, k, lo_, hi_);
  cum_.assign(grid + 1, 0.0);
  const double h = (hi_ - lo_) / grid;
  double acc = 0.0;
  for (int i = 0; i < grid; ++i) {
    double a = lo_ + i * h, b = a + h;
    acc += gauss_legendre([&](double t) { return pdf_marginal(k, t, inst, quad_pts); },
                          a, b, 8);
    cum_[i + 1] = acc;
  }
  if (!(acc > 0.0)) fail(ErrorCode::QuadratureNotConverged, "empty marginal support");
  for (double& v : cum_) v /= acc;
}

double MarginalCdf::operator()(double t) const {
  if (t <= lo_) return 0.0;
  if (t >= hi_) return 1.0;
  const int grid = static_cast<int>(cum_.size()) - 1;
  double x = (t - lo_) / (hi_ - lo_) * grid;
  int i = std::min(grid - 1, static_cast<int>(x));
  double frac = x - i;
  return cum_[i] * (1.0 - frac) + cum_[i + 1] * frac;
}

double cdf_marginal(int k, double t, const HornInstance& inst, int quad_pts) {
  if (quad_pts < 64) fail(ErrorCode::InvalidInstance, "cdf_marginal needs quad_pts >= 64");
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<MarginalCdf>> cache;
  std::ostringstream key;
  key << to_string(inst.kase) << '|' << inst.n << '|' << inst.b << '|' << k << '|'
      << quad_pts;
  for (double v : inst.a) key << ',' << v;
  std::shared_ptr<MarginalCdf> cdf;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key.str());
    if (it == cache.end()) {
      cdf = std::make_shared<MarginalCdf>(inst, k, quad_pts);
      cache.emplace(key.str(), cdf);
    } else {
      cdf = it->second;
    }
  }
  return (*cdf)(t);
}

double heaviside_bordered_det(const std::vector<double>& a, const std::vector<double>& c) {
  const int n = static_cast<int>(a.size());
  if (static_cast<int>(c.size()) != n) fail(ErrorCode::LengthMismatch, "length mismatch");
  Eigen::MatrixXd m = Eigen::MatrixXd::Ones(n + 1, n + 1);
  m(0, 0) = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(j + 1, k + 1) = c[j] > a[k] ? 1.0 : 0.0;
  return m.determinant();
}

}  // namespace hornlab
