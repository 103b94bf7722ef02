#include "hornlab/stats.hpp"

#include <algorithm>
#include <memory>
#include <charconv>
#include <cmath>
#include <sstream>

#include "hornlab/sampling.hpp"

namespace hornlab {

namespace {

// Shortest round-trip decimal, for byte-stable reports.
std::string fmt_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

Histogram Histogram::uniform(double lo, double hi, int bins) {
  if (!(hi > lo) || bins < 1) fail(ErrorCode::InvalidInstance, "bad histogram range");
  Histogram h;
  h.edges.resize(bins + 1);
  for (int i = 0; i <= bins; ++i) h.edges[i] = lo + (hi - lo) * i / bins;
  h.counts.assign(bins, 0);
  return h;
}

void Histogram::add(double x) {
  if (x < edges.front() || x >= edges.back()) {
    ++out_of_range;
    return;
  }
  double t = (x - edges.front()) / (edges.back() - edges.front());
  int i = std::min<int>(static_cast<int>(counts.size()) - 1,
                        static_cast<int>(t * counts.size()));
  // uniform edges: direct index, then nudge for rounding at bin borders
  while (i > 0 && x < edges[i]) --i;
  while (i + 1 < static_cast<int>(counts.size()) && x >= edges[i + 1]) ++i;
  ++counts[i];
  ++total;
}

double ks_statistic(const std::vector<double>& sorted_samples,
                    const std::function<double(double)>& cdf) {
  const long n = static_cast<long>(sorted_samples.size());
  if (n < 1) fail(ErrorCode::EmptySample, "KS needs a nonempty sample");
  double d = 0.0;
  for (long i = 0; i < n; ++i) {
    double f = cdf(sorted_samples[i]);
    d = std::max(d, (i + 1.0) / n - f);
    d = std::max(d, f - static_cast<double>(i) / n);
  }
  return std::min(1.0, d);
}

double ks_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 10 || b.size() < 10)
    fail(ErrorCode::EmptySample, "two-sample KS needs at least 10 samples each");
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;  // step past ties on both sides
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                             static_cast<double>(j) / b.size()));
  }
  return d;
}

double tv_against_cdf(const Histogram& h, const std::function<double(double)>& cdf) {
  if (h.total == 0) fail(ErrorCode::EmptySample, "empty histogram");
  double tv = 0.0;
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    double p_hat = static_cast<double>(h.counts[i]) / h.total;
    double p_ref = cdf(h.edges[i + 1]) - cdf(h.edges[i]);
    tv += std::abs(p_hat - p_ref);
  }
  return tv / 2.0;
}

VerificationReport run_verify(const HornInstance& inst, long n_samples, RngStream seed,
                              const VerifyOptions& opts) {
  inst.validate();
  if (n_samples < 10) fail(ErrorCode::EmptySample, "run_verify needs N >= 10");
  if (inst.n > 4)
    fail(ErrorCode::UnsupportedDimension, "verification supports n <= 4");
  const int n = inst.n;
  const bool ks_mode = n <= 3 && n >= 2;

  VerificationReport rep;
  rep.instance = inst;
  rep.n_samples = n_samples;
  rep.seed = seed.seed();
  rep.stream = seed.stream_id();
  rep.ks_threshold = kKsCritical001 / std::sqrt(static_cast<double>(n_samples));

  const int n_marg = ks_mode ? n - 1 : 0;
  std::vector<std::vector<double>> marg(n_marg);
  for (auto& m : marg) m.reserve(n_samples);

  const double id_tol = inst.kase == HornCase::MultiplicativeUnitary ? 1e-8 : 1e-9;
  const double target = inst.a_sum() + inst.b;

  RngStream rng = seed;
  for (long i = 0; i < n_samples; ++i) {
    std::vector<double> c;
    switch (inst.kase) {
      case HornCase::AdditiveHermitian:
        c = sample_additive_rank1(inst, rng).values;
        break;
      case HornCase::MultiplicativePositive:
        c = sample_mult_pos(inst, rng).values;
        break;
      case HornCase::MultiplicativeUnitary:
        c = sample_mult_unitary(inst, rng).angles;
        break;
    }
    // exact identity monitors
    double csum = std::accumulate(c.begin(), c.end(), 0.0);
    double resid = inst.kase == HornCase::MultiplicativeUnitary
                       ? std::abs(std::remainder(csum - target, kTwoPi))
                       : std::abs(csum - target);
    if (resid > id_tol) ++rep.trace_violations;

    if (inst.kase == HornCase::MultiplicativeUnitary) {
      PhaseSpectrum cs{c};
      SupportCheck chk = circular_interlaces(PhaseSpectrum{inst.a}, cs, inst.b);
      if (!(chk.margin > -id_tol)) ++rep.interlacing_violations;
      // unwrap into the support window so the marginal lives on an interval
      std::vector<double> u(c.size());
      for (std::size_t j = 0; j < c.size(); ++j)
        u[j] = wrap_window(c[j], inst.a.back());
      std::sort(u.begin(), u.end(), std::greater<double>());
      for (int k = 0; k < n_marg; ++k) marg[k].push_back(u[k]);
    } else {
      Spectrum cs{c, false};
      SupportCheck chk = interlaces(Spectrum{inst.a, false}, cs);
      if (!(chk.margin > -id_tol)) ++rep.interlacing_violations;
      for (int k = 0; k < n_marg; ++k) marg[k].push_back(c[k]);
    }
  }

  bool ks_ok = true;
  for (int k = 0; k < n_marg; ++k) {
    std::sort(marg[k].begin(), marg[k].end());
    MarginalCdf ref(inst, k, opts.quad_pts);
    auto cdf = [&](double t) { return ref(t); };
    std::function<double(double)> cdf_fn = cdf;
    if (opts.ref_b_scale != 1.0) {
      HornInstance perturbed(inst.kase, inst.a, inst.b * opts.ref_b_scale);
      auto pref = std::make_shared<MarginalCdf>(perturbed, k, opts.quad_pts);
      cdf_fn = [pref](double t) { return (*pref)(t); };
    }
    double ks = ks_statistic(marg[k], cdf_fn);
    rep.ks_per_marginal.push_back(ks);
    if (ks >= rep.ks_threshold) ks_ok = false;

    Histogram h = Histogram::uniform(ref.lo(), ref.hi(), opts.bins);
    for (double v : marg[k]) h.add(v);
    rep.tv_per_marginal.push_back(tv_against_cdf(h, cdf_fn));
    rep.histograms.push_back(std::move(h));
    double mean = std::accumulate(marg[k].begin(), marg[k].end(), 0.0) / n_samples;
    rep.mean_c.push_back(mean);
  }

  rep.pass = ks_ok && rep.trace_violations == 0 && rep.interlacing_violations == 0;
  return rep;
}

std::string VerificationReport::to_json() const {
  std::ostringstream os;
  os << "{";
  os << "\"case\":\"" << to_string(instance.kase) << "\"";
  os << ",\"n\":" << instance.n;
  os << ",\"a\":[";
  for (std::size_t j = 0; j < instance.a.size(); ++j)
    os << (j ? "," : "") << fmt_double(instance.a[j]);
  os << "]";
  os << ",\"b\":" << fmt_double(instance.b);
  os << ",\"n_samples\":" << n_samples;
  os << ",\"seed\":" << seed;
  os << ",\"stream\":" << stream;
  os << ",\"ks_threshold\":" << fmt_double(ks_threshold);
  os << ",\"ks_per_marginal\":[";
  for (std::size_t j = 0; j < ks_per_marginal.size(); ++j)
    os << (j ? "," : "") << fmt_double(ks_per_marginal[j]);
  os << "]";
  os << ",\"tv_per_marginal\":[";
  for (std::size_t j = 0; j < tv_per_marginal.size(); ++j)
    os << (j ? "," : "") << fmt_double(tv_per_marginal[j]);
  os << "]";
  os << ",\"mean_c\":[";
  for (std::size_t j = 0; j < mean_c.size(); ++j)
    os << (j ? "," : "") << fmt_double(mean_c[j]);
  os << "]";
  os << ",\"identity_violations\":{\"constraint\":" << trace_violations
     << ",\"interlacing\":" << interlacing_violations << "}";
  os << ",\"histograms\":[";
  for (std::size_t j = 0; j < histograms.size(); ++j) {
    const Histogram& h = histograms[j];
    os << (j ? "," : "") << "{\"lo\":" << fmt_double(h.edges.front())
       << ",\"hi\":" << fmt_double(h.edges.back()) << ",\"counts\":[";
    for (std::size_t i = 0; i < h.counts.size(); ++i)
      os << (i ? "," : "") << h.counts[i];
    os << "]}";
  }
  os << "]";
  os << ",\"out_of_range\":[";
  for (std::size_t j = 0; j < histograms.size(); ++j)
    os << (j ? "," : "") << histograms[j].out_of_range;
  os << "]";
  os << ",\"verdict\":\"" << (pass ? "pass" : "fail") << "\"";
  os << "}";
  return os.str();
}

}  // namespace hornlab
