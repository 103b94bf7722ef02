// Regularized inverse transforms: the U(n) character series and the
// oscillatory quadrature inversions on Herm(n)/Herm+(n).  Both evaluate the
// smoothed *unordered* joint density of the regularized model; ordered-chamber
// comparisons against the closed forms need the n! symmetrization factor,
// which reconstruct_marginal applies.

#include <cmath>

#include "hornlab/quadrature.hpp"
#include "hornlab/simd.hpp"
#include "hornlab/transforms.hpp"

namespace hornlab {

namespace {

double log_superfactorial(int n) {  // log prod_{j=0}^{n} j!
  double s = 0.0;
  for (int j = 2; j <= n; ++j) s += std::lgamma(j + 1.0);
  return s;
}

double factorial(int k) {
  double f = 1.0;
  for (int j = 2; j <= k; ++j) f *= j;
  return f;
}

cxd vdm(const cvec& v) {
  cxd p = 1.0;
  for (std::size_t k = 0; k < v.size(); ++k)
    for (std::size_t l = 0; l < k; ++l) p *= v[k] - v[l];
  return p;
}

cxd unit_phases_vdm(const std::vector<double>& c, double sign) {
  cxd p = 1.0;
  for (std::size_t k = 0; k < c.size(); ++k)
    for (std::size_t l = 0; l < k; ++l)
      p *= std::polar(1.0, sign * c[k]) - std::polar(1.0, sign * c[l]);
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// U(n) character series
// ---------------------------------------------------------------------------

UnitarySeries::UnitarySeries(const HornInstance& inst, RegularizerEps reg,
                             TruncationSpec trunc)
    : inst_(inst), eps_(reg.eps), n_(inst.n) {
  inst_.validate();
  trunc.validate();
  if (inst_.kase != HornCase::MultiplicativeUnitary)
    fail(ErrorCode::InvalidCase, "series inversion is the unitary case");
  if (n_ > 3) fail(ErrorCode::UnsupportedDimension, "series inversion supports n <= 3");
  S_ = trunc.S > 0 ? trunc.S : static_cast<int>(std::ceil(6.0 / eps_)) + n_;
  if (n_ == 1) return;
  // 1/((2pi)^n (prod_{j<=n} j!)^2) * prod_{j<n} j! * n!, the inversion
  // constant after pulling one Delta(s) and Delta(e^{-ic}) into the terms.
  prefactor_ = std::exp(-n_ * std::log(kTwoPi) - 2.0 * log_superfactorial(n_) +
                        log_superfactorial(n_ - 1) + std::lgamma(n_ + 1.0));
  if (n_ == 2)
    build_n2();
  else
    build_n3();
}

// n = 2 lattice: rows by s1, contiguous s2 < s1 ranges clipped by the
// Gaussian weight.  Term value T(s) = Delta(s) w(s) phi_a(s) phi_b(s).
void UnitarySeries::build_n2() {
  const double nu = 0.5;
  const double radius = std::sqrt(45.0) / eps_;  // weight below e^-45 is dropped
  const int lo = std::max(-S_, static_cast<int>(std::floor(nu - radius)));
  const int hi = std::min(S_, static_cast<int>(std::ceil(nu + radius)));
  const cxd ea1 = std::polar(1.0, inst_.a[0]);
  const cxd ea2 = std::polar(1.0, inst_.a[1]);
  const cxd da = ea2 - ea1;
  const cxd bfac = cxd(1.0) - std::polar(1.0, inst_.b);
  double total_abs = 0.0;
  for (int s1 = lo; s1 <= hi; ++s1) {
    int b2 = lo, e2 = std::min(hi, s1 - 1);
    if (e2 < b2) continue;
    Row row{s1, b2, t_re_.size(), static_cast<std::size_t>(e2 - b2 + 1)};
    for (int s2 = b2; s2 <= e2; ++s2) {
      double w = std::exp(-eps_ * eps_ *
                          ((s1 - nu) * (s1 - nu) + (s2 - nu) * (s2 - nu)));
      // phi_a = det[e^{i a_j s_k}] / (Delta(e^{ia}) Delta(s)),
      // phi_b = (e^{i b s1} - e^{i b s2}) / ((1 - e^{ib}) Delta(s)),
      // multiplied by Delta(s)^2 from the inversion: one Delta(s) survives.
      cxd det_a = std::polar(1.0, inst_.a[0] * s1 + inst_.a[1] * s2) -
                  std::polar(1.0, inst_.a[0] * s2 + inst_.a[1] * s1);
      cxd det_b = std::polar(1.0, inst_.b * s1) - std::polar(1.0, inst_.b * s2);
      cxd t = w * det_a * det_b / (da * bfac * static_cast<double>(s2 - s1));
      t_re_.push_back(t.real());
      t_im_.push_back(t.imag());
      total_abs += std::abs(t);
    }
    rows_.push_back(row);
  }
  if (rows_.empty()) fail(ErrorCode::TruncationTooSmall, "empty lattice");
  noise_floor_ = 1e-12 * prefactor_ * 4.0 * total_abs;
  // Tail estimate: |phi| <= 1 bounds |T| by |Delta(s)| w at the edge.
  if (S_ < nu + radius) {
    double edge_w = std::exp(-eps_ * eps_ * (S_ + 1 - nu) * (S_ + 1 - nu));
    double tail = edge_w * (2.0 * S_ + 3.0) * (2.0 * S_ + 3.0);
    if (tail > 1e-3 * total_abs)
      fail(ErrorCode::TruncationTooSmall, "lattice cutoff S too small for eps");
  }
}

void UnitarySeries::build_n3() {
  const double nu = (n_ - 1) / 2.0;
  const double radius = std::sqrt(45.0) / eps_;
  const int lo = std::max(-S_, static_cast<int>(std::floor(nu - radius)));
  const int hi = std::min(S_, static_cast<int>(std::ceil(nu + radius)));
  if (S_ < nu + radius) {
    double edge_w = std::exp(-eps_ * eps_ * (S_ + 1 - nu) * (S_ + 1 - nu));
    if (edge_w > 1e-9)
      fail(ErrorCode::TruncationTooSmall, "lattice cutoff S too small for eps");
  }
  std::vector<double> aph(inst_.a.begin(), inst_.a.end());
  for (int s1 = lo; s1 <= hi; ++s1)
    for (int s2 = lo; s2 < s1; ++s2)
      for (int s3 = lo; s3 < s2; ++s3) {
        double w = 0.0;
        for (int sj : {s1, s2, s3}) w += (sj - nu) * (sj - nu);
        w = std::exp(-eps_ * eps_ * w);
        if (w < 1e-20) continue;
        SphericalIndex s = SphericalIndex::integer_strict({s1, s2, s3});
        cxd ds = vdm(s.values);
        cxd t = ds * w * char_spherical(aph, s) * char_rank1(inst_.b, s);
        tuples_.push_back({s1, s2, s3});
        tvals_.push_back(t);
        noise_floor_ += std::abs(t);
      }
  if (tuples_.empty()) fail(ErrorCode::TruncationTooSmall, "empty lattice");
  noise_floor_ *= 1e-12 * prefactor_ * 8.0;
}

cxd UnitarySeries::joint_density_cplx(const std::vector<double>& c) const {
  if (static_cast<int>(c.size()) != n_)
    fail(ErrorCode::LengthMismatch, "need a full phase vector");
  if (n_ == 1)
    return theta_kernel(c[0] - inst_.a[0] - inst_.b, eps_, 1);
  if (n_ == 2) {
    // Tables of e^{-i c_j t} over the retained index range.
    const int lo = rows_.front().s2_begin;
    const int hi = rows_.back().s1;
    const int len = hi - lo + 1;
    std::vector<double> e1r(len), e1i(len), e2r(len), e2i(len);
    for (int t = 0; t < len; ++t) {
      cxd z1 = std::polar(1.0, -c[0] * (lo + t));
      cxd z2 = std::polar(1.0, -c[1] * (lo + t));
      e1r[t] = z1.real();
      e1i[t] = z1.imag();
      e2r[t] = z2.real();
      e2i[t] = z2.imag();
    }
    CompensatedCSum acc;
    for (const Row& row : rows_) {
      const std::size_t off = row.offset;
      const int sh = row.s2_begin - lo;
      cxd dot2 = simd::cdot(&t_re_[off], &t_im_[off], &e2r[sh], &e2i[sh], row.len);
      cxd dot1 = simd::cdot(&t_re_[off], &t_im_[off], &e1r[sh], &e1i[sh], row.len);
      cxd z1(e1r[row.s1 - lo], e1i[row.s1 - lo]);
      cxd z2(e2r[row.s1 - lo], e2i[row.s1 - lo]);
      acc.add(z1 * dot2 - z2 * dot1);
    }
    return prefactor_ * unit_phases_vdm(c, +1.0) * acc.value();
  }
  // n = 3: direct tuple loop.
  CompensatedCSum acc;
  for (std::size_t i = 0; i < tuples_.size(); ++i) {
    const auto& s = tuples_[i];
    Mat m(3, 3);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) m(j, k) = std::polar(1.0, -c[j] * s[k]);
    acc.add(tvals_[i] * m.determinant());
  }
  return prefactor_ * unit_phases_vdm(c, +1.0) * acc.value();
}

double UnitarySeries::joint_density(const std::vector<double>& c) const {
  cxd v = joint_density_cplx(c);
  if (std::abs(v.imag()) > 1e-8 * std::abs(v) + noise_floor_)
    fail(ErrorCode::QuadratureNotConverged, "series value has imaginary residue");
  return v.real();
}

double UnitarySeries::marginal_c1(double c1) const {
  if (n_ != 2) fail(ErrorCode::UnsupportedDimension, "marginal_c1 is n = 2 only");
  // Band-limited in c2, so the K-point trapezoid on the circle is exact once
  // K exceeds twice the retained frequency range.
  const int maxidx =
      std::max(std::abs(rows_.front().s2_begin), std::abs(rows_.back().s1));
  const int K = 2 * maxidx + 4;
  CompensatedCSum acc;
  for (int k = 0; k < K; ++k) {
    double c2 = -kPi + kTwoPi * k / K;
    acc.add(joint_density_cplx({c1, c2}));
  }
  cxd total = acc.value() * (kTwoPi / K);
  if (std::abs(total.imag()) > 1e-8 * std::abs(total) + kTwoPi * noise_floor_)
    fail(ErrorCode::QuadratureNotConverged, "marginal has imaginary residue");
  return factorial(n_) * total.real();
}

std::vector<double> inverse_unitary_series(const HornInstance& inst,
                                           const std::vector<std::vector<double>>& c_grid,
                                           RegularizerEps reg, TruncationSpec trunc) {
  UnitarySeries series(inst, reg, trunc);
  std::vector<double> out;
  out.reserve(c_grid.size());
  for (const auto& c : c_grid) out.push_back(series.joint_density(c));
  return out;
}

// ---------------------------------------------------------------------------
// Oscillatory quadrature inversions at n = 2
// ---------------------------------------------------------------------------

namespace {

struct QuadGrid {
  std::vector<double> y;
  std::vector<double> w;  // trapezoid weight times the Gaussian regularizer
  double h = 0.0;
};

QuadGrid make_grid(const HornInstance& inst, const std::vector<double>& c, double eps,
                   const TruncationSpec& trunc) {
  trunc.validate();
  const int n = inst.n;
  double halfw = trunc.domain_halfwidth > 0.0
                     ? trunc.domain_halfwidth
                     : 8.0 / (std::sqrt(static_cast<double>(n)) * eps);
  double fmax = std::abs(inst.b);
  for (double v : inst.a) fmax = std::max(fmax, std::abs(v));
  double cmax = 0.0;
  for (double v : c) cmax = std::max(cmax, std::abs(v));
  fmax += cmax + 1.0;
  double h = std::min(0.25, kTwoPi / (12.0 * fmax));
  int half_pts = static_cast<int>(std::ceil(halfw / h));
  if (trunc.quad_pts > 0) half_pts = std::max(half_pts, trunc.quad_pts / 2);
  const int npts = 2 * half_pts + 1;
  QuadGrid g;
  g.h = halfw / half_pts;
  g.y.resize(npts);
  g.w.resize(npts);
  for (int k = 0; k < npts; ++k) {
    g.y[k] = (k - half_pts) * g.h;
    double tw = (k == 0 || k == npts - 1) ? 0.5 : 1.0;
    g.w[k] = tw * g.h * std::exp(-eps * eps * g.y[k] * g.y[k]);
  }
  return g;
}

struct Split {
  std::vector<double> re, im;
  explicit Split(std::size_t m) : re(m), im(m) {}
  void set(std::size_t k, cxd z) {
    re[k] = z.real();
    im[k] = z.imag();
  }
  cxd get(std::size_t k) const { return {re[k], im[k]}; }
};

struct CoreIntegral {
  cxd value;
  double noise = 0.0;  // round-off scale of the double sum
};

// Core double integral
//   int dy1 dy2 e^{-eps^2 (y1^2+y2^2)} det[e^{i c_j y_k}] det[e^{-i a_j y_k}]
//     * (e^{-i b y1} - e^{-i b y2}) / (y2 - y1)
// restructured into Cauchy-type dot products over the uniform grid.
CoreIntegral core_integral_n2(const HornInstance& inst, const std::vector<double>& c,
                              double eps, const TruncationSpec& trunc) {
  QuadGrid g = make_grid(inst, c, eps, trunc);
  const std::size_t npts = g.y.size();

  Split P(npts), Q(npts), R(npts), S(npts), Eb(npts);
  Split WP(npts), WQ(npts), WR(npts), WS(npts);
  Split WPb(npts), WQb(npts), WRb(npts), WSb(npts);
  for (std::size_t k = 0; k < npts; ++k) {
    cxd ec1 = std::polar(1.0, c[0] * g.y[k]);
    cxd ec2 = std::polar(1.0, c[1] * g.y[k]);
    cxd ea1 = std::polar(1.0, -inst.a[0] * g.y[k]);
    cxd ea2 = std::polar(1.0, -inst.a[1] * g.y[k]);
    cxd eb = std::polar(1.0, -inst.b * g.y[k]);
    cxd p = ec1 * ea1, q = ec2 * ea2, r = ec1 * ea2, s = ec2 * ea1;
    P.set(k, p);
    Q.set(k, q);
    R.set(k, r);
    S.set(k, s);
    Eb.set(k, eb);
    WP.set(k, g.w[k] * p);
    WQ.set(k, g.w[k] * q);
    WR.set(k, g.w[k] * r);
    WS.set(k, g.w[k] * s);
    WPb.set(k, g.w[k] * p * eb);
    WQb.set(k, g.w[k] * q * eb);
    WRb.set(k, g.w[k] * r * eb);
    WSb.set(k, g.w[k] * s * eb);
  }
  // 1/(y[k2]-y[k1]) as a shifted lookup; the k2 == k1 slot is zero (both
  // determinants vanish on the diagonal, so it contributes nothing).
  std::vector<double> inv(2 * npts - 1);
  for (std::size_t j = 0; j < inv.size(); ++j) {
    long d = static_cast<long>(j) - static_cast<long>(npts - 1);
    inv[j] = d == 0 ? 0.0 : 1.0 / (d * g.h);
  }

  CompensatedCSum acc;
  double sw = 0.0;
  for (std::size_t k1 = 0; k1 < npts; ++k1) {
    const double* base = inv.data() + (npts - 1 - k1);
    cxd cq = simd::cdot_rw(WQ.re.data(), WQ.im.data(), base, npts);
    cxd cqb = simd::cdot_rw(WQb.re.data(), WQb.im.data(), base, npts);
    cxd cp = simd::cdot_rw(WP.re.data(), WP.im.data(), base, npts);
    cxd cpb = simd::cdot_rw(WPb.re.data(), WPb.im.data(), base, npts);
    cxd cs = simd::cdot_rw(WS.re.data(), WS.im.data(), base, npts);
    cxd csb = simd::cdot_rw(WSb.re.data(), WSb.im.data(), base, npts);
    cxd cr = simd::cdot_rw(WR.re.data(), WR.im.data(), base, npts);
    cxd crb = simd::cdot_rw(WRb.re.data(), WRb.im.data(), base, npts);
    cxd eb1 = Eb.get(k1);
    cxd inner = P.get(k1) * (eb1 * cq - cqb) + Q.get(k1) * (eb1 * cp - cpb) -
                R.get(k1) * (eb1 * cs - csb) - S.get(k1) * (eb1 * cr - crb);
    acc.add(g.w[k1] * inner);
    sw += g.w[k1];
  }
  // |integrand| <= 8 max(1,|b|) per weight pair bounds the attainable sum
  double noise = 1e-13 * sw * sw * 8.0 * std::max(1.0, std::abs(inst.b));
  return {acc.value(), noise};
}

void require_n2(const HornInstance& inst, const std::vector<double>& c) {
  if (inst.n != 2 || c.size() != 2)
    fail(ErrorCode::UnsupportedDimension, "quadrature inversion runs at n = 2");
}

}  // namespace

cxd herm_inversion_prefactor(const HornInstance& inst, const std::vector<double>& c) {
  const int n = inst.n;
  cvec cv(c.begin(), c.end()), av(inst.a.begin(), inst.a.end());
  cxd pref = std::pow(cxd(0.0, -1.0), n - 1) * factorial(n - 1) /
             (factorial(n) * factorial(n) * std::pow(inst.b, n - 1));
  return pref * vdm(cv) / vdm(av);
}

cxd pos_inversion_prefactor(const HornInstance& inst, const std::vector<double>& c,
                            double eps) {
  const int n = inst.n;
  cvec ec(n), ea(n);
  double csum = 0.0;
  for (int j = 0; j < n; ++j) {
    ec[j] = std::exp(c[j]);
    ea[j] = std::exp(inst.a[j]);
    csum += c[j];
  }
  // e^{sum(c-a)-b} from the contour shift plus the regularizer constant
  // prod_j e^{-eps^2 j^2}; both tend to 1 with eps on the constraint.
  double j2 = n * (n + 1.0) * (2.0 * n + 1.0) / 6.0;
  cxd pref = std::pow(cxd(0.0, -1.0), n - 1) * factorial(n - 1) /
             (factorial(n) * factorial(n) * std::pow(std::expm1(inst.b), n - 1));
  pref *= std::exp(csum - inst.a_sum() - inst.b - eps * eps * j2);
  return pref * vdm(ec) / vdm(ea);
}

double inverse_hermitian_quadrature(const HornInstance& inst,
                                    const std::vector<double>& c, RegularizerEps reg,
                                    TruncationSpec trunc) {
  require_n2(inst, c);
  if (inst.kase != HornCase::AdditiveHermitian)
    fail(ErrorCode::InvalidCase, "instance is not additive");
  CoreIntegral core = core_integral_n2(inst, c, reg.eps, trunc);
  cxd pref = herm_inversion_prefactor(inst, c);
  cxd val = pref * core.value / (kTwoPi * kTwoPi);
  double floor = std::abs(pref) * core.noise / (kTwoPi * kTwoPi);
  if (std::abs(val.imag()) > 1e-6 * std::abs(val) + floor)
    fail(ErrorCode::TruncationTooSmall, "imaginary residue in reconstruction");
  return val.real();
}

double inverse_pos_quadrature(const HornInstance& inst, const std::vector<double>& c,
                              RegularizerEps reg, TruncationSpec trunc) {
  require_n2(inst, c);
  if (inst.kase != HornCase::MultiplicativePositive)
    fail(ErrorCode::InvalidCase, "instance is not multiplicative-positive");
  CoreIntegral core = core_integral_n2(inst, c, reg.eps, trunc);
  cxd pref = pos_inversion_prefactor(inst, c, reg.eps);
  cxd val = pref * core.value / (kTwoPi * kTwoPi);
  double floor = std::abs(pref) * core.noise / (kTwoPi * kTwoPi);
  if (std::abs(val.imag()) > 1e-6 * std::abs(val) + floor)
    fail(ErrorCode::TruncationTooSmall, "imaginary residue in reconstruction");
  return val.real();
}

double reconstruct_marginal(const HornInstance& inst, double c1, RegularizerEps reg,
                            TruncationSpec trunc) {
  if (inst.n != 2) fail(ErrorCode::UnsupportedDimension, "marginals run at n = 2");
  if (inst.kase == HornCase::MultiplicativeUnitary)
    return UnitarySeries(inst, reg, trunc).marginal_c1(c1);
  const double resolved = inst.a_sum() + inst.b - c1;
  const double halfw = 16.0 * reg.eps;
  auto f = [&](double c2) {
    return inst.kase == HornCase::AdditiveHermitian
               ? inverse_hermitian_quadrature(inst, {c1, c2}, reg, trunc)
               : inverse_pos_quadrature(inst, {c1, c2}, reg, trunc);
  };
  return 2.0 * gauss_legendre(f, resolved - halfw, resolved + halfw, 48);
}

cxd inversion_core_integrand(const std::vector<double>& y, const std::vector<double>& a,
                             double b, const std::vector<double>& c, double eps) {
  const int n = static_cast<int>(y.size());
  Mat mc(n, n), ma(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      mc(j, k) = std::polar(1.0, c[j] * y[k]);
      ma(j, k) = std::polar(1.0, -a[j] * y[k]);
    }
  cxd pole = 0.0;
  for (int p = 0; p < n; ++p) {
    cxd den = 1.0;
    for (int l = 0; l < n; ++l)
      if (l != p) den *= y[l] - y[p];
    pole += std::polar(1.0, -b * y[p]) / den;
  }
  double q = 0.0;
  for (double v : y) q += v * v;
  return std::exp(-eps * eps * q) * mc.determinant() * ma.determinant() * pole;
}

cxd pos_integrand_s_form(const std::vector<double>& y, const std::vector<double>& a,
                         double b, const std::vector<double>& c, double eps) {
  // Literal integrand of the s-variable form with s_j = -y_j + i j, including
  // its own global prefactor; compared pointwise against
  // pos_inversion_prefactor * inversion_core_integrand.
  const int n = static_cast<int>(y.size());
  cvec s(n);
  for (int j = 0; j < n; ++j) s[j] = cxd(-y[j], static_cast<double>(j + 1));
  cxd pole = 0.0;
  for (int p = 0; p < n; ++p) {
    cxd den = 1.0;
    for (int l = 0; l < n; ++l)
      if (l != p) den *= static_cast<double>(l - p) + cxd(0.0, 1.0) * (s[l] - s[p]);
    pole += std::exp(b * (static_cast<double>(p) + cxd(0.0, 1.0) * s[p])) / den;
  }
  cxd reg = 1.0;
  for (int j = 0; j < n; ++j) {
    cxd u = static_cast<double>(j + 1) + cxd(0.0, 1.0) * s[j];
    reg *= std::exp(eps * eps * (u * u - cxd((j + 1.0) * (j + 1.0))));
  }
  Mat mc(n, n), ma(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      cxd ek = static_cast<double>(k) + cxd(0.0, 1.0) * s[k];
      mc(j, k) = std::exp(-c[j] * ek);
      ma(j, k) = std::exp(a[j] * ek);
    }
  cvec ecv(n), eav(n);
  for (int j = 0; j < n; ++j) {
    ecv[j] = std::exp(c[j]);
    eav[j] = std::exp(a[j]);
  }
  cxd pref = factorial(n - 1) /
             (factorial(n) * factorial(n) * std::pow(cxd(1.0 - std::exp(b)), n - 1));
  pref *= vdm(ecv) / vdm(eav);
  return pref * pole * reg * mc.determinant() * ma.determinant();
}

}  // namespace hornlab
