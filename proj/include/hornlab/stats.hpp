// Statistical verification engine: histograms, one- and two-sample KS
// statistics, per-sample identity monitors and the verification report.

#pragma once

#include <functional>

#include "hornlab/densities.hpp"
#include "hornlab/rng.hpp"
#include "hornlab/types.hpp"

namespace hornlab {

struct Histogram {
  std::vector<double> edges;  // m + 1, strictly increasing
  std::vector<long> counts;   // m
  long total = 0;             // in-range count
  long out_of_range = 0;

  static Histogram uniform(double lo, double hi, int bins);
  void add(double x);
};

// Asymptotic one-sample KS critical constant at level alpha = 0.01.
inline constexpr double kKsCritical001 = 1.628;

// sup_t |F_N(t) - F(t)| over the sample points; samples must be sorted.
double ks_statistic(const std::vector<double>& sorted_samples,
                    const std::function<double(double)>& cdf);

// Two-sample KS distance between two sorted samples.
double ks_two_sample(const std::vector<double>& sorted_a,
                     const std::vector<double>& sorted_b);

// Total variation distance between a histogram and the reference CDF's bin
// masses.
double tv_against_cdf(const Histogram& h, const std::function<double(double)>& cdf);

struct VerifyOptions {
  int bins = 64;
  int quad_pts = 64;
  // Scales b inside the *reference* CDF only; used by the power check to
  // confirm the suite rejects a wrong density.
  double ref_b_scale = 1.0;
};

struct VerificationReport {
  HornInstance instance;
  long n_samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::vector<double> ks_per_marginal;
  double ks_threshold = 0.0;
  std::vector<double> tv_per_marginal;
  long trace_violations = 0;        // trace/determinant/phase-sum identity
  long interlacing_violations = 0;  // linear or circular
  std::vector<Histogram> histograms;
  std::vector<double> mean_c;  // sample mean of each tested marginal
  bool pass = false;

  std::string to_json() const;  // flat object, fixed key order
};

// Draws n_samples from the instance's sampler, monitors the exact identities
// per sample, and tests each available marginal (c1, and c2 at n = 3)
// against the quadrature CDF at the alpha = 0.01 KS threshold.  n = 4 runs
// the identity monitors only.  Deterministic given (seed, stream).
VerificationReport run_verify(const HornInstance& inst, long n_samples, RngStream seed,
                              const VerifyOptions& opts = {});

}  // namespace hornlab
