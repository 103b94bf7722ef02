// Spherical functions of the three symmetric spaces: the HCIZ integral on
// Herm(n), the Gelfand-Naimark integral on Herm+(n) and normalized U(n)
// characters, plus their rank-1 degenerations and Monte Carlo factorization
// checks.  All determinant ratios go through a confluence-stable core.

#pragma once

#include "hornlab/matrix.hpp"
#include "hornlab/rng.hpp"
#include "hornlab/types.hpp"

namespace hornlab {

// Relative pairwise separation below which determinant ratios switch to
// divided-difference evaluation.
inline constexpr double kConfluenceThreshold = 1e-4;

// prod_{j=0}^{n-1} j! * det[exp(x_j s_k)] / (Delta(x) Delta(s)).  The heart
// of all three spherical functions; handles coincident nodes in either
// argument by Newton divided differences.
cxd det_exp_ratio(const cvec& x, const cvec& s, bool force_confluent = false);

// HCIZ integral phi(x, s) = int mu(dU) exp(tr U x U* s).
cxd hciz(const cvec& x, const cvec& s);

// Rank-1 HCIZ phi(-i diag(b,0,...,0), s) as an explicit pole sum.
cxd hciz_rank1(cxd b, const cvec& s);

// Gelfand-Naimark integral phi(e^x, s) = int mu(dU) |U e^x U*|^s.
cxd gn_spherical(const std::vector<double>& x_log, const cvec& s);

// Rank-1 Gelfand-Naimark phi(e^{diag(b,0,...,0)}, s).
cxd gn_rank1(double b, const cvec& s);

// Normalized character ch_s(X)/ch_s(1) for X with eigenphases theta and
// strictly decreasing integer index s.
cxd char_spherical(const std::vector<double>& theta, const SphericalIndex& s);
cxd char_spherical(const PhaseSpectrum& theta, const SphericalIndex& s);

// Rank-1 character phi(diag(e^{ib}, 1, ..., 1), s).
cxd char_rank1(double b, const SphericalIndex& s);

struct McFactorizationReport {
  cxd mean;              // Monte Carlo estimate of E_U[phi(combine(X1, U X2 U*), s)]
  double stderr_ = 0.0;  // combined standard error of the complex mean
  cxd reference;         // phi(X1, s) * phi(X2, s)
  double zscore = 0.0;
  bool exact_match = false;  // zero-variance case (X2 = identity)
  long n_samples = 0;
};

// Monte Carlo check of the convolution identities with fixed matrices:
// E_U[phi(X1 + U X2 U*, s)]      = phi(X1,s) phi(X2,s)   on Herm(n)
// E_U[phi(X1^{1/2} U X2 U* X1^{1/2}, s)] = phi(X1,s) phi(X2,s) on Herm+(n)
// E_U[phi(X1 U X2 U*, s)]        = phi(X1,s) phi(X2,s)   on U(n)
McFactorizationReport mc_factorization_check(HornCase kase, const ComplexMatrix& x1,
                                             const ComplexMatrix& x2,
                                             const SphericalIndex& s, long n_samples,
                                             RngStream& rng);

}  // namespace hornlab
