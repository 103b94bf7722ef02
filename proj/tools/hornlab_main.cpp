// hornlab command line: samplers, closed-form densities, spherical
// functions, statistical verification and transform reconstructions.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "hornlab/densities.hpp"
#include "hornlab/quadrature.hpp"
#include "hornlab/sampling.hpp"
#include "hornlab/simd.hpp"
#include "hornlab/spherical.hpp"
#include "hornlab/stats.hpp"
#include "hornlab/transforms.hpp"

namespace {

using namespace hornlab;

std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt(cxd z) {
  std::string s = fmt(z.real());
  if (z.imag() >= 0.0) s += "+";
  s += fmt(z.imag()) + "i";
  return s;
}

std::vector<double> parse_reals(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  if (out.empty()) throw CLI::ValidationError("empty numeric list");
  return out;
}

// "1.3+0.2i", "-2i", "0.7" ...
cxd parse_complex(std::string tok) {
  if (tok.empty()) throw CLI::ValidationError("empty complex entry");
  bool has_i = tok.back() == 'i' || tok.back() == 'I';
  if (!has_i) return cxd(std::stod(tok), 0.0);
  tok.pop_back();
  // split at the last +/- that is not an exponent sign or leading sign
  std::size_t split = std::string::npos;
  for (std::size_t p = tok.size(); p-- > 1;) {
    if ((tok[p] == '+' || tok[p] == '-') && tok[p - 1] != 'e' && tok[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  if (split == std::string::npos) {
    if (tok.empty() || tok == "+") return cxd(0.0, 1.0);
    if (tok == "-") return cxd(0.0, -1.0);
    return cxd(0.0, std::stod(tok));
  }
  double re = std::stod(tok.substr(0, split));
  std::string imtok = tok.substr(split);
  double im = (imtok == "+") ? 1.0 : (imtok == "-") ? -1.0 : std::stod(imtok);
  return cxd(re, im);
}

cvec parse_complex_list(const std::string& list) {
  cvec out;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(parse_complex(tok));
  }
  if (out.empty()) throw CLI::ValidationError("empty complex list");
  return out;
}

HornCase parse_case(const std::string& s) {
  if (s == "additive") return HornCase::AdditiveHermitian;
  if (s == "positive") return HornCase::MultiplicativePositive;
  if (s == "unitary") return HornCase::MultiplicativeUnitary;
  throw CLI::ValidationError("--case must be additive|positive|unitary");
}

std::uint64_t seed_default() {
  if (const char* env = std::getenv("HORNLAB_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
    std::cerr << "warning: ignoring malformed HORNLAB_SEED\n";
  }
  return 0;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw CLI::ValidationError("cannot open output file " + path);
  return file;
}

int cmd_sample(const std::string& kase, const std::string& a_list, double b,
               long n_samples, std::uint64_t seed, std::uint64_t stream,
               const std::string& out_path, const std::string& format) {
  HornInstance inst(parse_case(kase), parse_reals(a_list), b);
  RngStream rng(seed, stream);
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  const bool json = format == "json";
  if (!json && format != "csv")
    throw CLI::ValidationError("--format must be csv or json");
  if (json)
    out << "{\"case\":\"" << kase << "\",\"samples\":[";
  else {
    for (int j = 0; j < inst.n; ++j) out << (j ? "," : "") << "c" << (j + 1);
    out << "\r\n";
  }
  for (long i = 0; i < n_samples; ++i) {
    std::vector<double> c;
    switch (inst.kase) {
      case HornCase::AdditiveHermitian: c = sample_additive_rank1(inst, rng).values; break;
      case HornCase::MultiplicativePositive: c = sample_mult_pos(inst, rng).values; break;
      case HornCase::MultiplicativeUnitary: c = sample_mult_unitary(inst, rng).angles; break;
    }
    if (json) out << (i ? ",[" : "[");
    for (int j = 0; j < inst.n; ++j) out << (j ? "," : "") << fmt(c[j]);
    out << (json ? "]" : "\r\n");
  }
  if (json) out << "]}\n";
  return 0;
}

int cmd_pdf(const std::string& kase, const std::string& a_list, double b, int grid,
            const std::string& out_path) {
  HornInstance inst(parse_case(kase), parse_reals(a_list), b);
  if (inst.n < 2 || inst.n > 3)
    throw CLI::ValidationError("pdf grids are emitted for the c1 marginal at n = 2, 3");
  double lo, hi;
  marginal_support(inst, 0, lo, hi);
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  out << "c1,density\r\n";
  for (int i = 0; i < grid; ++i) {
    double t = lo + (hi - lo) * (i + 0.5) / grid;
    out << fmt(t) << "," << fmt(pdf_marginal(0, t, inst)) << "\r\n";
  }
  return 0;
}

int cmd_spherical(const std::string& which, const std::string& x_list,
                  const std::string& s_list, double b) {
  cvec s = parse_complex_list(s_list);
  cxd val;
  if (which == "hciz") {
    std::vector<double> x = parse_reals(x_list);
    cvec xc(x.begin(), x.end());
    val = hciz(xc, s);
  } else if (which == "hciz-rank1") {
    val = hciz_rank1(b, s);
  } else if (which == "gn") {
    val = gn_spherical(parse_reals(x_list), s);
  } else if (which == "gn-rank1") {
    val = gn_rank1(b, s);
  } else if (which == "char") {
    std::vector<long> si(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) si[j] = std::lround(s[j].real());
    val = char_spherical(parse_reals(x_list), SphericalIndex::integer_strict(si));
  } else if (which == "char-rank1") {
    std::vector<long> si(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) si[j] = std::lround(s[j].real());
    val = char_rank1(b, SphericalIndex::integer_strict(si));
  } else {
    throw CLI::ValidationError("unknown spherical function " + which);
  }
  std::cout << fmt(val) << "\n";
  return 0;
}

int cmd_verify(const std::string& kase, const std::string& a_list, double b,
               long n_samples, std::uint64_t seed, std::uint64_t stream, int bins,
               double ref_b_scale) {
  HornInstance inst(parse_case(kase), parse_reals(a_list), b);
  VerifyOptions opts;
  opts.bins = bins;
  opts.ref_b_scale = ref_b_scale;
  VerificationReport rep = run_verify(inst, n_samples, RngStream(seed, stream), opts);
  std::cout << rep.to_json() << "\n";
  return rep.pass ? 0 : 1;
}

int cmd_invert(const std::string& kase, const std::string& a_list, double b, double eps,
               int smax, int grid, const std::string& out_path) {
  HornInstance inst(parse_case(kase), parse_reals(a_list), b);
  if (inst.n != 2) throw CLI::ValidationError("reconstructions run at n = 2");
  RegularizerEps reg(eps);
  TruncationSpec trunc;
  trunc.S = smax;
  double lo, hi;
  marginal_support(inst, 0, lo, hi);
  double band = 5.0 * eps;  // smoothing bias dominates inside the edge band
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  out << "c1,reconstruction,closed_form\r\n";
  for (int i = 0; i < grid; ++i) {
    double t = (lo + band) + (hi - lo - 2 * band) * (i + 0.5) / grid;
    double rec = reconstruct_marginal(inst, t, reg, trunc);
    out << fmt(t) << "," << fmt(rec) << "," << fmt(pdf_joint({t}, inst)) << "\r\n";
  }
  return 0;
}

int cmd_selftest();

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hornlab: rank-1 randomised Horn problems, cross-verified"};
  app.require_subcommand(1);

  std::string kase = "additive", a_list, which, x_list, s_list, out_path;
  std::string format = "csv";
  double b = 1.0, eps = 0.05, ref_b_scale = 1.0;
  long n_samples = 10000;
  std::uint64_t seed = seed_default(), stream = 0;
  int bins = 64, grid = 64, smax = 0;

  auto add_instance_flags = [&](CLI::App* cmd, bool need_b = true) {
    cmd->add_option("--case", kase, "additive|positive|unitary");
    cmd->add_option("--a", a_list, "fixed spectrum, comma separated, descending")
        ->required();
    if (need_b) cmd->add_option("--b", b, "rank-1 strength")->required();
  };

  CLI::App* c_sample = app.add_subcommand("sample", "draw spectra and emit CSV");
  add_instance_flags(c_sample);
  c_sample->add_option("--n-samples", n_samples);
  c_sample->add_option("--seed", seed);
  c_sample->add_option("--stream", stream);
  c_sample->add_option("--out", out_path, "output file (default stdout)");
  c_sample->add_option("--format", format, "csv|json (default csv)");

  CLI::App* c_pdf = app.add_subcommand("pdf", "evaluate the closed-form marginal");
  add_instance_flags(c_pdf);
  c_pdf->add_option("--grid", grid);
  c_pdf->add_option("--out", out_path);

  CLI::App* c_sph = app.add_subcommand("spherical", "evaluate a spherical function");
  c_sph->add_option("--which", which,
                    "hciz|hciz-rank1|gn|gn-rank1|char|char-rank1")->required();
  c_sph->add_option("--x", x_list, "argument vector (eigenvalues/logs/phases)");
  c_sph->add_option("--s", s_list, "spherical index, entries like 1.3+0.2i")->required();
  c_sph->add_option("--b", b, "rank-1 strength for the *-rank1 forms");

  CLI::App* c_verify = app.add_subcommand("verify", "Monte Carlo verification report");
  add_instance_flags(c_verify);
  c_verify->add_option("--n-samples", n_samples);
  c_verify->add_option("--seed", seed);
  c_verify->add_option("--stream", stream);
  c_verify->add_option("--bins", bins);
  c_verify->add_option("--ref-b-scale", ref_b_scale,
                       "perturb b in the reference CDF only (power checks)");

  CLI::App* c_invert = app.add_subcommand("invert", "transform reconstruction to CSV");
  add_instance_flags(c_invert);
  c_invert->add_option("--eps", eps, "regularizer width");
  c_invert->add_option("--smax", smax, "lattice cutoff (unitary case; 0 = auto)");
  c_invert->add_option("--grid", grid);
  c_invert->add_option("--out", out_path);

  app.add_subcommand("selftest", "run the fast invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (c_sample->parsed())
      return cmd_sample(kase, a_list, b, n_samples, seed, stream, out_path, format);
    if (c_pdf->parsed()) return cmd_pdf(kase, a_list, b, grid, out_path);
    if (c_sph->parsed()) return cmd_spherical(which, x_list, s_list, b);
    if (c_verify->parsed())
      return cmd_verify(kase, a_list, b, n_samples, seed, stream, bins, ref_b_scale);
    if (c_invert->parsed())
      return cmd_invert(kase, a_list, b, eps, smax, grid, out_path);
    return cmd_selftest();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const HornError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

namespace {

int cmd_selftest() {
  int failures = 0;
  auto check = [&](const char* name, bool ok) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
  };

  // theta kernel duality
  {
    double worst = 0.0;
    for (double eps : {0.1, 1.0})
      for (int n : {1, 2, 3})
        for (int i = 0; i < 64; ++i) {
          double x = -kPi + kTwoPi * (i + 0.5) / 64;
          worst = std::max(worst, std::abs(theta_kernel_fourier(x, eps, n) -
                                           theta_kernel_gaussian(x, eps, n)));
        }
    check("theta kernel representations agree", worst < 1e-12);
  }
  // rank-1 vs full spherical functions
  {
    RngStream rng(7, 0);
    double worst = 0.0;
    for (int n : {2, 3}) {
      for (int rep = 0; rep < 8; ++rep) {
        cvec s(n);
        for (int j = 0; j < n; ++j) s[j] = cxd(3.0 * rng.uniform01() - 1.0, 0.4 * rng.uniform01());
        double b = 0.3 + rng.uniform01();
        cvec xb(n, 0.0);
        xb[0] = cxd(0.0, -b);
        worst = std::max(worst, std::abs(hciz_rank1(b, s) - hciz(xb, s)) /
                                    std::abs(hciz(xb, s)));
        std::vector<double> xg(n, 0.0);
        xg[0] = b;
        worst = std::max(worst, std::abs(gn_rank1(b, s) - gn_spherical(xg, s)) /
                                    std::abs(gn_spherical(xg, s)));
      }
    }
    check("rank-1 forms match full determinant ratios", worst < 1e-8);
  }
  // closed-form marginal normalization
  {
    bool ok = true;
    std::vector<HornInstance> insts = {
        HornInstance(HornCase::AdditiveHermitian, {1.0, 0.0}, 0.5),
        HornInstance(HornCase::MultiplicativePositive, {1.0, 0.0}, 0.5),
        HornInstance(HornCase::MultiplicativeUnitary, {1.0, -1.0}, 0.8)};
    for (const auto& inst : insts) {
      double lo, hi;
      marginal_support(inst, 0, lo, hi);
      double total = gauss_legendre(
          [&](double t) { return pdf_marginal(0, t, inst); }, lo, hi, 256);
      ok = ok && std::abs(total - 1.0) < 1e-6;
    }
    check("closed-form marginals integrate to 1", ok);
  }
  // per-sample identities
  {
    bool ok = true;
    RngStream rng(11, 0);
    HornInstance add(HornCase::AdditiveHermitian, {1.0, 0.0}, 0.5);
    HornInstance pos(HornCase::MultiplicativePositive, {1.0, 0.0}, 0.5);
    HornInstance uni(HornCase::MultiplicativeUnitary, {1.0, -1.0}, 0.8);
    for (int i = 0; i < 2000; ++i) {
      Spectrum c = sample_additive_rank1(add, rng);
      ok = ok && std::abs(c.sum() - 1.5) < 1e-9;
      ok = ok && interlaces(Spectrum{add.a, false}, c).margin > -1e-9;
      Spectrum cp = sample_mult_pos(pos, rng);
      ok = ok && std::abs(cp.sum() - 1.5) < 1e-9;
      PhaseSpectrum cu = sample_mult_unitary(uni, rng);
      ok = ok && std::abs(std::remainder(cu.sum() - 0.8, kTwoPi)) < 1e-8;
      ok = ok && circular_interlaces(PhaseSpectrum{uni.a}, cu, uni.b).margin > -1e-8;
    }
    check("per-sample trace/determinant/interlacing identities", ok);
  }
  // report determinism
  {
    HornInstance add(HornCase::AdditiveHermitian, {1.0, 0.0}, 0.5);
    std::string r1 = run_verify(add, 2000, RngStream(42, 0)).to_json();
    std::string r2 = run_verify(add, 2000, RngStream(42, 0)).to_json();
    check("verification report is byte-deterministic", r1 == r2);
  }
  // simd equivalence
  {
    RngStream rng(3, 1);
    std::vector<double> ar(1003), ai(1003), br(1003), bi(1003), w(1003);
    for (std::size_t k = 0; k < ar.size(); ++k) {
      ar[k] = rng.normal();
      ai[k] = rng.normal();
      br[k] = rng.normal();
      bi[k] = rng.normal();
      w[k] = rng.normal();
    }
    cxd d1 = simd::cdot(ar.data(), ai.data(), br.data(), bi.data(), ar.size());
    cxd d2 = simd::scalar::cdot(ar.data(), ai.data(), br.data(), bi.data(), ar.size());
    cxd e1 = simd::cdot_rw(ar.data(), ai.data(), w.data(), ar.size());
    cxd e2 = simd::scalar::cdot_rw(ar.data(), ai.data(), w.data(), ar.size());
    bool ok = std::abs(d1 - d2) < 1e-10 && std::abs(e1 - e2) < 1e-10;
    std::cout << "       (simd path: " << simd::active_isa() << ")\n";
    check("simd kernels match scalar reference", ok);
  }

  std::cout << (failures == 0 ? "selftest passed" : "selftest FAILED") << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace
