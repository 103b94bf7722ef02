// Closed-form joint eigenvalue densities of the rank-1 randomised Horn
// problem, support predicates and deterministic marginal CDFs.  The delta
// constraint is resolved by eliminating c_n, so every density here is a
// function of the n-1 free coordinates (c_1, ..., c_{n-1}).

#pragma once

#include <functional>

#include "hornlab/types.hpp"

namespace hornlab {

struct SupportCheck {
  bool ok = false;
  double margin = 0.0;  // smallest slack among the chain inequalities
};

struct ConstrainedPoint {
  std::vector<double> free;
  double resolved = 0.0;
  HornCase kase = HornCase::AdditiveHermitian;

  std::vector<double> full() const {
    std::vector<double> c = free;
    c.push_back(resolved);
    return c;
  }
};

// Strict Cauchy interlacing c_1 > a_1 > c_2 > ... > c_n > a_n.
SupportCheck interlaces(const Spectrum& a, const Spectrum& c);

// Circular variant: unwraps c into the window (a_n, a_n + 2 pi], re-sorts and
// checks 2 pi + a_n >= c_1 > a_1 > ... > c_n > a_n.
SupportCheck circular_interlaces(const PhaseSpectrum& a, const PhaseSpectrum& c,
                                 double b);

// c_n from the trace/determinant constraint (wrapped into the support window
// in the unitary case).
ConstrainedPoint resolve_constraint(const std::vector<double>& free,
                                    const HornInstance& inst);

// Marginal density of (c_1, ..., c_{n-1}) on the constraint hyperplane.
double pdf_additive(const std::vector<double>& free, const HornInstance& inst);
double pdf_mult_pos(const std::vector<double>& free, const HornInstance& inst);
double pdf_mult_unitary(const std::vector<double>& free, const HornInstance& inst);

// Case dispatch for the above.
double pdf_joint(const std::vector<double>& free, const HornInstance& inst);

// Support interval of the c_1 marginal (unwrapped coordinates in the unitary
// case).
void marginal_support(const HornInstance& inst, int k, double& lo, double& hi);

// Marginal density of coordinate k (0-based), n <= 3.
double pdf_marginal(int k, double t, const HornInstance& inst, int quad_pts = 64);

// Deterministic-quadrature CDF of coordinate k; monotone, 0/1 at the support
// endpoints.  Values are cached on a grid internally.
class MarginalCdf {
 public:
  MarginalCdf(const HornInstance& inst, int k, int quad_pts = 64, int grid = 2048);
  double operator()(double t) const;
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_ = 0.0, hi_ = 0.0;
  std::vector<double> cum_;  // cumulative values on a uniform grid
};

double cdf_marginal(int k, double t, const HornInstance& inst, int quad_pts = 64);

// Bordered Heaviside determinant det[[0, 1s], [1s, Theta(c_j - a_k)]] from
// the permutation-invariant densities.
double heaviside_bordered_det(const std::vector<double>& a, const std::vector<double>& c);

}  // namespace hornlab
