// Forward and inverse spherical transforms with Gaussian regularization:
// the Jacobi theta heat kernel in dual representations, the U(n) character
// series inversion, the Herm(n)/Herm+(n) oscillatory quadrature inversions
// at n = 2, regularizer densities and forward transform test vectors.

#pragma once

#include "hornlab/spherical.hpp"
#include "hornlab/types.hpp"

namespace hornlab {

struct RegularizerEps {
  double eps = 0.1;
  RegularizerEps() = default;
  explicit RegularizerEps(double e) : eps(e) {
    if (!(eps > 0.0)) fail(ErrorCode::InvalidInstance, "eps must be positive");
  }
};

struct TruncationSpec {
  int S = 0;                      // lattice cutoff; 0 = ceil(6/eps) + n
  int quad_pts = 0;               // quadrature points per axis; 0 = automatic
  double domain_halfwidth = 0.0;  // Herm quadrature cutoff; 0 = 8/(sqrt(n) eps)

  void validate() const {
    if (S < 0 || (S > 0 && S < 1))
      fail(ErrorCode::InvalidInstance, "lattice cutoff S must be >= 1");
    if (quad_pts != 0 && quad_pts < 16)
      fail(ErrorCode::InvalidInstance, "quad_pts must be >= 16");
    if (domain_halfwidth < 0.0)
      fail(ErrorCode::InvalidInstance, "domain halfwidth must be positive");
  }
};

// Heat kernel on the circle
//   g_eps(x) = (1/2pi) sum_s exp(-eps^2 (s-(n-1)/2)^2) exp(-i x (s-(n-1)/2))
//            = sum_m ((-1)^((n-1)m) / (2 sqrt(pi) eps)) exp(-(x+2m pi)^2/(4 eps^2)).
// Both representations are implemented; the Gaussian (dual) one is selected
// for eps < 1, the Fourier one otherwise.
double theta_kernel(double x, double eps, int n);
double theta_kernel_fourier(double x, double eps, int n);
double theta_kernel_gaussian(double x, double eps, int n);

// (-d/dx)^order of the Fourier representation.
double theta_kernel_deriv(double x, double eps, int n, int order);

// Truncated regularized character-series inversion: the smoothed unordered
// joint eigenphase density of diag(e^{ia}) V diag(e^{ib},1,..,1) V* perturbed
// by the eps-heat kernel, summed over the dominant-weight lattice.  n <= 3.
class UnitarySeries {
 public:
  UnitarySeries(const HornInstance& inst, RegularizerEps reg, TruncationSpec trunc = {});

  cxd joint_density_cplx(const std::vector<double>& c) const;
  double joint_density(const std::vector<double>& c) const;

  // n = 2 only: ordered c1-marginal, n! * integral of the joint density over
  // the resolved coordinate (exact trapezoid; the series is band-limited).
  double marginal_c1(double c1) const;

  long term_count() const { return static_cast<long>(t_re_.size()); }

 private:
  void build_n2();
  void build_n3();

  HornInstance inst_;
  double eps_;
  int S_ = 0;
  int n_ = 0;
  double prefactor_ = 0.0;
  double noise_floor_ = 0.0;  // round-off scale of the lattice sum
  // n = 2 fast path: rows by s1, contiguous s2 ranges, split complex storage.
  struct Row {
    int s1;
    int s2_begin;
    std::size_t offset;
    std::size_t len;
  };
  std::vector<Row> rows_;
  std::vector<double> t_re_, t_im_;
  // generic path (n = 3): explicit tuples
  std::vector<std::array<int, 3>> tuples_;
  std::vector<cxd> tvals_;
};

// Smoothed density values on a grid of full phase vectors; checks that the
// imaginary residue stays below 1e-8 of the magnitude.
std::vector<double> inverse_unitary_series(const HornInstance& inst,
                                           const std::vector<std::vector<double>>& c_grid,
                                           RegularizerEps reg, TruncationSpec trunc = {});

// Regularized rank-1 inversion integrals on Herm(n) and Herm+(n) at n = 2:
// smoothed unordered joint densities at a full c point.
double inverse_hermitian_quadrature(const HornInstance& inst,
                                    const std::vector<double>& c, RegularizerEps reg,
                                    TruncationSpec trunc = {});
double inverse_pos_quadrature(const HornInstance& inst, const std::vector<double>& c,
                              RegularizerEps reg, TruncationSpec trunc = {});

// Ordered c1-marginal of a smoothed reconstruction: n! times the integral of
// the smoothed joint density across the constraint-normal direction.  n = 2.
double reconstruct_marginal(const HornInstance& inst, double c1, RegularizerEps reg,
                            TruncationSpec trunc = {});

// Shared oscillatory integrand of the two quadrature inversions (the y-form),
// and the literal s-form integrand of the Herm+ inversion before the
// change of variables s_j = -y_j + i j.  Exposed for the pointwise identity
// test between the two routes.
cxd inversion_core_integrand(const std::vector<double>& y, const std::vector<double>& a,
                             double b, const std::vector<double>& c, double eps);
cxd pos_integrand_s_form(const std::vector<double>& y, const std::vector<double>& a,
                         double b, const std::vector<double>& c, double eps);
cxd herm_inversion_prefactor(const HornInstance& inst, const std::vector<double>& c);
cxd pos_inversion_prefactor(const HornInstance& inst, const std::vector<double>& c,
                            double eps);

enum class RegularizerKind { GueEigen, MbEigen, UheatEigen };
enum class TransformWhich { Gue, MuttalibBorodin };

struct TransformCheckReport {
  cxd quadrature_value;
  cxd closed_form;
  double rel_err = 0.0;
};

// Forward spherical transform of the named regularizer density by eigenvalue
// quadrature against its closed form: GUE -> prod exp(-eps^2 s_j^2),
// Muttalib-Borodin -> prod exp(eps^2 (s_j-n+1)^2 - eps^2 j^2).
TransformCheckReport forward_transform_check(TransformWhich which, RegularizerEps reg,
                                             const SphericalIndex& s,
                                             TruncationSpec trunc = {});

// Normalized regularizer eigenvalue densities (numeric normalization cached
// per (kind, n, eps)).  GUE and U(n)-heat points are eigenvalues/phases; the
// Muttalib-Borodin point is in log coordinates.
double pdf_regularizer(RegularizerKind kind, const std::vector<double>& point,
                       RegularizerEps reg);

}  // namespace hornlab
