#include <doctest.h>

#include "hornlab/densities.hpp"
#include "hornlab/quadrature.hpp"
#include "hornlab/rng.hpp"

using namespace hornlab;

TEST_SUITE_BEGIN("densities");

namespace {

const HornInstance kAdd2(HornCase::AdditiveHermitian, {1.0, 0.0}, 0.5);
const HornInstance kPos2(HornCase::MultiplicativePositive, {1.0, 0.0}, 0.5);
const HornInstance kUni2(HornCase::MultiplicativeUnitary, {1.0, -1.0}, 0.8);
const HornInstance kAdd3(HornCase::AdditiveHermitian, {2.0, 0.5, -1.0}, 1.0);
const HornInstance kPos3(HornCase::MultiplicativePositive, {2.0, 0.5, -1.0}, 1.0);
const HornInstance kUni3(HornCase::MultiplicativeUnitary, {1.5, 0.2, -1.2}, 0.9);

}  // namespace

TEST_CASE("interlacing predicate") {
  Spectrum a{{1.0, 0.0}, false};
  SupportCheck ok = interlaces(a, Spectrum{{1.4, 0.1}, false});
  CHECK(ok.ok);
  CHECK(ok.margin == doctest::Approx(0.1));
  CHECK_FALSE(interlaces(a, Spectrum{{0.9, 0.1}, false}).ok);
  CHECK_FALSE(interlaces(a, Spectrum{{1.4, -0.1}, false}).ok);
  CHECK_THROWS_AS(interlaces(a, Spectrum{{1.0}, false}), HornError);
}

TEST_CASE("circular interlacing predicate") {
  PhaseSpectrum a1{{0.0}};
  CHECK(circular_interlaces(a1, PhaseSpectrum{{2.0}}, 2.0).ok);
  PhaseSpectrum a2{{1.0, -1.0}};
  CHECK(circular_interlaces(a2, PhaseSpectrum{{1.5, -0.5}}, 1.0).ok);
  CHECK_FALSE(circular_interlaces(a2, PhaseSpectrum{{1.0, -0.5}}, 1.0).ok);  // tie
}

TEST_CASE("constraint resolution") {
  CHECK(resolve_constraint({1.25}, kAdd2).resolved == doctest::Approx(0.25));
  HornInstance pos(HornCase::MultiplicativePositive, {0.0, -1.0}, 1.0);
  CHECK(resolve_constraint({0.3}, pos).resolved == doctest::Approx(-0.3));
  CHECK(resolve_constraint({1.5}, kUni2).resolved == doctest::Approx(-0.7));
}

TEST_CASE("additive density closed form") {
  CHECK(pdf_additive({1.25}, kAdd2) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(pdf_additive({1.49}, kAdd2) ==
        doctest::Approx(2.0 * (2.0 * 1.49 - 1.5)).epsilon(1e-12));
  CHECK(pdf_additive({0.9}, kAdd2) == 0.0);   // violates interlacing
  CHECK(pdf_additive({1.6}, kAdd2) == 0.0);
  CHECK_THROWS_AS(pdf_additive({1.0 + 1e-12}, kAdd2), HornError);  // touches a1
}

TEST_CASE("multiplicative positive density closed form") {
  double expect = (std::exp(1.25) - std::exp(0.25)) /
                  ((std::exp(0.5) - 1.0) * (std::exp(1.0) - 1.0));
  CHECK(pdf_mult_pos({1.25}, kPos2) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(pdf_mult_pos({1.6}, kPos2) == 0.0);

  // small-parameter limit approaches the additive shape
  HornInstance small_p(HornCase::MultiplicativePositive, {0.01, 0.0}, 0.005);
  HornInstance small_a(HornCase::AdditiveHermitian, {0.01, 0.0}, 0.005);
  double t = 0.0125;
  double rel = std::abs(pdf_mult_pos({t}, small_p) - pdf_additive({t}, small_a)) /
               pdf_additive({t}, small_a);
  CHECK(rel < 0.03);
}

TEST_CASE("unitary density: phase-factored vs complex determinant ratio") {
  // independent complex-arithmetic route across the support
  for (int i = 0; i < 50; ++i) {
    double t = 1.0 + 1e-6 + (0.8 - 2e-6) * (i + 0.5) / 50.0;
    double c2 = 1.0 - 1.0 + 0.8 - t;  // a1+a2+b-t
    cxd dc = std::polar(1.0, t) - std::polar(1.0, c2);
    cxd da = std::polar(1.0, 1.0) - std::polar(1.0, -1.0);
    cxd val = cxd(0.0, 1.0) * dc / ((std::polar(1.0, 0.8) - 1.0) * da);
    double got = pdf_mult_unitary({t}, kUni2);
    CHECK(std::abs(got - std::abs(val)) < 1e-12 * std::abs(val));
    CHECK(std::abs(val.imag()) < 1e-12 * std::abs(val));  // real on the support
  }
  CHECK(pdf_mult_unitary({2.5}, kUni2) == 0.0);  // outside support
}

TEST_CASE("unitary density symmetry under conjugation and translation") {
  // negating all phases and b matches (complex conjugation of the density)
  HornInstance neg(HornCase::MultiplicativeUnitary, {1.0, -1.0}, -0.8);
  for (double t : {1.2, 1.4, 1.6}) {
    double lhs = pdf_mult_unitary({t}, kUni2);
    double rhs = pdf_mult_unitary({-t}, neg);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
  // common shift of a and c leaves the density unchanged
  double delta = 0.37;
  HornInstance shifted(HornCase::MultiplicativeUnitary, {1.0 + delta, -1.0 + delta},
                       0.8);
  for (double t : {1.2, 1.4, 1.6}) {
    CHECK(pdf_mult_unitary({t}, kUni2) ==
          doctest::Approx(pdf_mult_unitary({t + delta}, shifted)).epsilon(1e-12));
  }
}

TEST_CASE("scale covariance of the additive density") {
  const double lam = 2.5;
  HornInstance scaled(HornCase::AdditiveHermitian, {lam * 1.0, 0.0}, lam * 0.5);
  for (double t : {1.1, 1.25, 1.4}) {
    double lhs = pdf_additive({lam * t}, scaled);
    double rhs = pdf_additive({t}, kAdd2) / lam;  // n = 2: lambda^{-(n-1)}
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("bordered Heaviside determinant matches the ordered indicator") {
  // on the ordered chamber the determinant is -1, so the permutation
  // invariant density carries the leading minus sign
  std::vector<double> a2 = {1.0, 0.0};
  CHECK(heaviside_bordered_det(a2, {1.25, 0.25}) == doctest::Approx(-1.0));
  // delta(c) * det is permutation invariant: both factors flip together
  CHECK(heaviside_bordered_det(a2, {0.25, 1.25}) == doctest::Approx(1.0));
  // off support: zero
  CHECK(heaviside_bordered_det(a2, {1.25, 1.1}) == doctest::Approx(0.0));

  auto vdm = [](const std::vector<double>& v) {
    double p = 1.0;
    for (std::size_t k = 0; k < v.size(); ++k)
      for (std::size_t l = 0; l < k; ++l) p *= v[k] - v[l];
    return p;
  };
  std::vector<double> a3 = {2.0, 0.5, -1.0}, c3 = {2.5, 1.0, 0.0};
  CHECK(heaviside_bordered_det(a3, c3) == doctest::Approx(-1.0));
  double inv3 = vdm(c3) * heaviside_bordered_det(a3, c3);
  std::vector<std::vector<double>> perms = {{1.0, 2.5, 0.0}, {0.0, 1.0, 2.5},
                                            {2.5, 0.0, 1.0}, {0.0, 2.5, 1.0},
                                            {1.0, 0.0, 2.5}};
  for (const auto& p : perms)
    CHECK(vdm(p) * heaviside_bordered_det(a3, p) == doctest::Approx(inv3));
  CHECK(heaviside_bordered_det(a3, {2.5, 2.2, 0.0}) == doctest::Approx(0.0));

  // n! correspondence: -(1/n) det * Delta(c)/Delta(a) / b^{n-1} equals the
  // ordered density divided by n!
  const double b3 = 2.5 + 1.0 + 0.0 - 1.5;  // constraint-consistent b
  double lhs = -(1.0 / 3.0) * heaviside_bordered_det(a3, c3) * vdm(c3) / vdm(a3) /
               (b3 * b3);
  HornInstance inst3(HornCase::AdditiveHermitian, a3, b3);
  double rhs = pdf_additive({2.5, 1.0}, inst3) / 6.0;
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("support consistency: positive density iff the indicator holds") {
  RngStream rng(61, 0);
  for (int i = 0; i < 200; ++i) {
    double t = 0.5 + 1.5 * rng.uniform01();
    std::vector<double> c = {t, 1.5 - t};
    bool ok = interlaces(Spectrum{kAdd2.a, false}, Spectrum{{std::max(t, 1.5 - t),
                                                             std::min(t, 1.5 - t)},
                                                            false})
                  .ok &&
              t >= 1.5 - t;  // resolved point must keep the given ordering
    double p;
    try {
      p = pdf_additive({t}, kAdd2);
    } catch (const HornError&) {
      continue;  // boundary-touching draws are rejected, not zero
    }
    CHECK((p > 0.0) == ok);
  }
  for (int i = 0; i < 200; ++i) {
    double t = -kPi + kTwoPi * rng.uniform01();
    double p;
    try {
      p = pdf_mult_unitary({t}, kUni2);
    } catch (const HornError&) {
      continue;
    }
    std::vector<double> full = {t, 0.8 - t};
    bool ok = circular_interlaces(PhaseSpectrum{kUni2.a},
                                  PhaseSpectrum{{wrap_pi(t), wrap_pi(0.8 - t)}},
                                  kUni2.b)
                  .ok;
    CHECK((p > 0.0) == ok);
  }
}

TEST_CASE("closed-form marginals are normalized at n = 2 and n = 3") {
  for (const HornInstance* inst :
       {&kAdd2, &kPos2, &kUni2, &kAdd3, &kPos3, &kUni3}) {
    double lo, hi;
    marginal_support(*inst, 0, lo, hi);
    double total = gauss_legendre(
        [&](double t) { return pdf_marginal(0, t, *inst, 96); }, lo, hi, 200);
    CHECK(std::abs(total - 1.0) < 1e-6);
  }
}

TEST_CASE("marginal CDF values and endpoints") {
  // int_1^1.25 2(2c - 1.5) dc = 0.375 (the antiderivative stated with the
  // example evaluates to this; frozen from the independent oracle)
  CHECK(cdf_marginal(0, 1.25, kAdd2) == doctest::Approx(0.375).epsilon(1e-6));
  CHECK(cdf_marginal(0, 0.5, kAdd2) == 0.0);
  CHECK(cdf_marginal(0, 2.0, kAdd2) == 1.0);

  // monotone
  double prev = -1.0;
  for (int i = 0; i <= 40; ++i) {
    double t = 0.9 + 0.7 * i / 40.0;
    double v = cdf_marginal(0, t, kAdd2);
    CHECK(v >= prev);
    prev = v;
  }

  CHECK_THROWS_AS(cdf_marginal(0, 1.0, HornInstance(HornCase::AdditiveHermitian,
                                                    {3.0, 2.0, 1.0, 0.0}, 0.5)),
                  HornError);
}

TEST_SUITE_END();
