#include <doctest.h>

#include <algorithm>
#include <random>

#include "hornlab/sampling.hpp"
#include "hornlab/spherical.hpp"

using namespace hornlab;

TEST_SUITE_BEGIN("spherical");

namespace {

cvec random_cvec(RngStream& rng, int n, double re_span = 2.0, double im_span = 0.5) {
  cvec v(n);
  for (int j = 0; j < n; ++j)
    v[j] = cxd(re_span * (rng.uniform01() - 0.3), im_span * (rng.uniform01() - 0.5));
  return v;
}

}  // namespace

TEST_CASE("hciz basic values") {
  // x = 0 -> 1 for any s (fully confluent argument)
  cvec zero3(3, 0.0);
  cvec s3 = {cxd(1.3, 0.2), cxd(0.4, -0.7), cxd(-0.5, 0.1)};
  CHECK(std::abs(hciz(zero3, s3) - 1.0) < 1e-12);

  // scalar case
  CHECK(std::abs(hciz({cxd(0.3, 0.1)}, {cxd(1.2, -0.4)}) -
                 std::exp(cxd(0.3, 0.1) * cxd(1.2, -0.4))) < 1e-14);

  // n = 2, x = (1,0), s = (1,0) -> e - 1
  cvec x = {1.0, 0.0}, s = {1.0, 0.0};
  CHECK(std::abs(hciz(x, s) - (std::exp(1.0) - 1.0)) < 1e-12);
}

TEST_CASE("hciz against its Monte Carlo definition") {
  // E_U[exp(tr U x U* s)] over Haar, x = diag(1,0), s = diag(1,0)
  RngStream rng(101, 0);
  const long N = 1000000;
  double mean = 0.0, m2 = 0.0;
  for (long i = 0; i < N; ++i) {
    Mat u = haar_unitary(2, rng).mat();
    // tr U x U* s with x = diag(1,0), s = diag(1,0): |u00|^2
    double v = std::exp(std::norm(u(0, 0)));
    double d = v - mean;
    mean += d / (i + 1.0);
    m2 += d * (v - mean);
  }
  double se = std::sqrt(m2 / (N - 1.0) / N);
  CHECK(std::abs(mean - (std::exp(1.0) - 1.0)) < 3.0 * se);
}

TEST_CASE("hciz_rank1") {
  // n = 2, b = 1, s = (1,0) -> -i (1 - e^{-i})
  cvec s = {1.0, 0.0};
  cxd expect = cxd(0.0, -1.0) * (1.0 - std::exp(cxd(0.0, -1.0)));
  CHECK(std::abs(hciz_rank1(1.0, s) - expect) < 1e-14);

  // n = 1 scalar
  CHECK(std::abs(hciz_rank1(0.7, {cxd(1.1, 0.2)}) -
                 std::exp(cxd(0.0, -0.7) * cxd(1.1, 0.2))) < 1e-14);

  // definitional identity against the full HCIZ with degenerate argument
  RngStream rng(103, 0);
  for (double b : {0.1, 1.0, 3.0}) {
    for (int n : {2, 3, 4}) {
      cvec sv = random_cvec(rng, n);
      cvec xb(n, 0.0);
      xb[0] = cxd(0.0, -b);
      cxd full = hciz(xb, sv);
      CHECK(std::abs(hciz_rank1(b, sv) - full) < 1e-8 * std::abs(full));
    }
  }

  CHECK_THROWS_AS(hciz_rank1(1.0, cvec{cxd(1.0, 0.0), cxd(1.0, 0.0)}), HornError);
}

TEST_CASE("gn_spherical basic values") {
  RngStream rng(105, 0);
  // base point s = (n-1, ..., 0) gives 1 for any x
  for (int n : {2, 3}) {
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) x[j] = 2.0 * rng.uniform01() - 1.0;
    std::sort(x.begin(), x.end(), std::greater<double>());
    cvec s(n);
    for (int j = 0; j < n; ++j) s[j] = cxd(static_cast<double>(n - 1 - j), 0.0);
    CHECK(std::abs(gn_spherical(x, s) - 1.0) < 1e-11);
  }

  // n = 2, x = (ln 2, 0), s = (1, 0) -> 1
  CHECK(std::abs(gn_spherical({std::log(2.0), 0.0}, {1.0, 0.0}) - 1.0) < 1e-12);

  // n = 1
  CHECK(std::abs(gn_spherical({0.4}, {cxd(1.2, 0.1)}) -
                 std::exp(0.4 * cxd(1.2, 0.1))) < 1e-14);
}

TEST_CASE("gn_rank1") {
  CHECK(std::abs(gn_rank1(std::log(2.0), {1.0, 0.0}) - 1.0) < 1e-14);
  CHECK(std::abs(gn_rank1(0.3, {cxd(0.8, -0.2)}) - std::exp(0.3 * cxd(0.8, -0.2))) <
        1e-14);

  RngStream rng(107, 0);
  cvec s = random_cvec(rng, 3);
  cxd full = gn_spherical({0.7, 0.0, 0.0}, s);
  CHECK(std::abs(gn_rank1(0.7, s) - full) < 1e-8 * std::abs(full));
}

TEST_CASE("normalized characters") {
  // trivial representation s = (n-1, ..., 0)
  for (int n : {2, 3}) {
    std::vector<long> sv(n);
    for (int j = 0; j < n; ++j) sv[j] = n - 1 - j;
    std::vector<double> th(n);
    RngStream rng(109 + n, 0);
    for (int j = 0; j < n; ++j) th[j] = kPi * (2.0 * rng.uniform01() - 1.0);
    CHECK(std::abs(char_spherical(th, SphericalIndex::integer_strict(sv)) - 1.0) <
          1e-11);
  }

  // fundamental-type index at n = 2: (e^{i t1} + e^{i t2}) / 2
  std::vector<double> th = {0.7, -1.1};
  cxd expect = (std::polar(1.0, th[0]) + std::polar(1.0, th[1])) / 2.0;
  cxd got = char_spherical(th, SphericalIndex::integer_strict({2, 0}));
  CHECK(std::abs(got - expect) < 1e-13);

  // theta = 0 (identity matrix): fully confluent argument, equals 1
  CHECK(std::abs(char_spherical(std::vector<double>{0.0, 0.0, 0.0},
                                SphericalIndex::integer_strict({5, 2, -1})) -
                 1.0) < 1e-11);
}

TEST_CASE("char_rank1") {
  SphericalIndex s3 = SphericalIndex::integer_strict({4, 2, 0});
  cxd full = char_spherical(std::vector<double>{0.9, 0.0, 0.0}, s3);
  CHECK(std::abs(char_rank1(0.9, s3) - full) < 1e-10 * std::abs(full));

  CHECK(std::abs(char_rank1(0.8, SphericalIndex::integer_strict({3})) -
                 std::exp(cxd(0.0, 0.8 * 3))) < 1e-14);

  // b = pi, s = (2, 0): (e^{2 pi i} ... ) fundamental character at diag(-1,1) is 0
  CHECK(std::abs(char_rank1(kPi, SphericalIndex::integer_strict({2, 0}))) < 1e-14);
}

TEST_CASE("character bound and shift covariance") {
  RngStream rng(113, 0);
  for (int rep = 0; rep < 50; ++rep) {
    int n = 2 + static_cast<int>(rng.uniform01() * 2);
    std::vector<double> th(n);
    for (int j = 0; j < n; ++j) th[j] = kPi * (2.0 * rng.uniform01() - 1.0);
    std::vector<long> sv(n);
    long cur = static_cast<long>(rng.uniform01() * 6) - 3;
    for (int j = 0; j < n; ++j) {
      sv[j] = cur;
      cur -= 1 + static_cast<long>(rng.uniform01() * 3);
    }
    std::sort(sv.begin(), sv.end(), std::greater<long>());
    cxd v = char_spherical(th, SphericalIndex::integer_strict(sv));
    CHECK(std::abs(v) <= 1.0 + 1e-12);

    // char(theta, s + m) = e^{i m sum theta} char(theta, s)
    long m = 2;
    std::vector<long> shifted(sv);
    for (long& t : shifted) t += m;
    cxd vs = char_spherical(th, SphericalIndex::integer_strict(shifted));
    double tsum = th[0] + th[1] + (n == 3 ? th[2] : 0.0);
    cxd expect = std::polar(1.0, m * tsum) * v;
    CHECK(std::abs(vs - expect) < 1e-11);
  }
}

TEST_CASE("permutation symmetry of the spherical functions") {
  RngStream rng(115, 0);
  cvec x = random_cvec(rng, 3), s = random_cvec(rng, 3);
  cxd base = hciz(x, s);
  cvec xp = {x[2], x[0], x[1]};
  cvec sp = {s[1], s[2], s[0]};
  CHECK(std::abs(hciz(xp, s) - base) < 1e-10 * std::abs(base));
  CHECK(std::abs(hciz(x, sp) - base) < 1e-10 * std::abs(base));
}

TEST_CASE("confluence continuity at the path switch") {
  // two x entries just outside the threshold: generic and divided-difference
  // paths agree to 1e-6 relative; just inside, the confluent path is smooth
  RngStream rng(117, 0);
  cvec s = random_cvec(rng, 3);
  const double gap = 1.5e-4;  // threshold is 1e-4 relative, scale ~ 1
  cvec x = {cxd(0.6, 0.0), cxd(0.6 - gap, 0.0), cxd(-0.4, 0.0)};
  cxd generic = det_exp_ratio(x, s, false);
  cxd confluent = det_exp_ratio(x, s, true);
  CHECK(std::abs(generic - confluent) < 1e-6 * std::abs(generic));

  cvec x2 = {cxd(0.6, 0.0), cxd(0.6 - 0.5e-4, 0.0), cxd(-0.4, 0.0)};
  cxd inside = det_exp_ratio(x2, s, false);   // auto-selects divided differences
  cxd forced = det_exp_ratio(x2, s, true);
  CHECK(std::abs(inside - forced) < 1e-12 * std::abs(forced));
}

TEST_CASE("factorization identity by Monte Carlo, all three cases") {
  RngStream rng(119, 0);
  const long N = 20000;

  // U(n): X1 = diag(e^i, e^-i), X2 = diag(e^{i/2}, 1), s = (2, 0)
  {
    ComplexMatrix x1 = ComplexMatrix::diagonal(cvec{std::polar(1.0, 1.0),
                                                    std::polar(1.0, -1.0)});
    ComplexMatrix x2 = ComplexMatrix::diagonal(cvec{std::polar(1.0, 0.5), 1.0});
    auto rep = mc_factorization_check(HornCase::MultiplicativeUnitary, x1, x2,
                                      SphericalIndex::integer_strict({2, 0}), N, rng);
    CHECK(rep.zscore < 4.0);
  }
  // Herm+: a = (1,0), b = (0.5,0), s = (1.3+0.2i, 0.1)
  {
    ComplexMatrix x1 = ComplexMatrix::diagonal(std::vector<double>{std::exp(1.0), 1.0});
    ComplexMatrix x2 =
        ComplexMatrix::diagonal(std::vector<double>{std::exp(0.5), 1.0});
    SphericalIndex s =
        SphericalIndex::complex_vector({cxd(1.3, 0.2), cxd(0.1, 0.0)});
    auto rep =
        mc_factorization_check(HornCase::MultiplicativePositive, x1, x2, s, N, rng);
    CHECK(rep.zscore < 4.0);
  }
  // Herm additive
  {
    ComplexMatrix x1 = ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0});
    ComplexMatrix x2 = ComplexMatrix::diagonal(std::vector<double>{0.5, -0.2});
    SphericalIndex s =
        SphericalIndex::complex_vector({cxd(0.8, 0.0), cxd(-0.3, 0.0)});
    auto rep =
        mc_factorization_check(HornCase::AdditiveHermitian, x1, x2, s, N, rng);
    CHECK(rep.zscore < 4.0);
  }
  // X2 = identity: zero-variance exact match
  {
    ComplexMatrix x1 = ComplexMatrix::diagonal(cvec{std::polar(1.0, 1.0),
                                                    std::polar(1.0, -1.0)});
    auto rep = mc_factorization_check(HornCase::MultiplicativeUnitary, x1,
                                      ComplexMatrix::identity(2),
                                      SphericalIndex::integer_strict({2, 0}), 1000, rng);
    CHECK(rep.exact_match);
    CHECK(rep.zscore == 0.0);
  }
}

TEST_SUITE_END();
