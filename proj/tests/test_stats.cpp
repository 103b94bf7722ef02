#include <doctest.h>

#include <algorithm>

#include "hornlab/stats.hpp"

using namespace hornlab;

TEST_SUITE_BEGIN("stats");

TEST_CASE("histogram bookkeeping") {
  Histogram h = Histogram::uniform(0.0, 1.0, 4);
  for (double x : {0.1, 0.3, 0.3, 0.9, 1.5, -0.2}) h.add(x);
  CHECK(h.total == 4);
  CHECK(h.out_of_range == 2);
  long sum = 0;
  for (long c : h.counts) sum += c;
  CHECK(sum == h.total);
}

TEST_CASE("KS statistic basics") {
  // a single sample at the reference median gives 0.5
  CHECK(ks_statistic({0.5}, [](double t) { return t; }) == doctest::Approx(0.5));
  // a reference CDF that is 0 on the whole sample range gives 1
  std::vector<double> s;
  for (int i = 0; i < 100; ++i) s.push_back(i / 100.0);
  CHECK(ks_statistic(s, [](double) { return 0.0; }) == doctest::Approx(1.0));
  CHECK_THROWS_AS(ks_statistic({}, [](double t) { return t; }), HornError);
}

TEST_CASE("KS statistic under the null") {
  RngStream rng(21, 0);
  const long N = 100000;
  std::vector<double> s(N);
  for (long i = 0; i < N; ++i) s[i] = rng.uniform01();
  std::sort(s.begin(), s.end());
  double d = ks_statistic(s, [](double t) { return std::clamp(t, 0.0, 1.0); });
  CHECK(d < kKsCritical001 / std::sqrt(static_cast<double>(N)));
}

TEST_CASE("two-sample KS on identical and disjoint samples") {
  std::vector<double> a, b;
  for (int i = 0; i < 50; ++i) {
    a.push_back(i);
    b.push_back(i + 100.0);
  }
  CHECK(ks_two_sample(a, a) == doctest::Approx(0.0));
  CHECK(ks_two_sample(a, b) == doctest::Approx(1.0));
}

TEST_CASE("run_verify passes on the reference instances and is deterministic") {
  HornInstance add(HornCase::AdditiveHermitian, {1.0, 0.0}, 0.5);
  VerificationReport rep = run_verify(add, 20000, RngStream(42, 0));
  CHECK(rep.pass);
  CHECK(rep.trace_violations == 0);
  CHECK(rep.interlacing_violations == 0);
  CHECK(rep.ks_per_marginal.size() == 1);

  VerificationReport rep2 = run_verify(add, 20000, RngStream(42, 0));
  CHECK(rep.to_json() == rep2.to_json());

  HornInstance uni(HornCase::MultiplicativeUnitary, {1.0, -1.0}, 0.8);
  CHECK(run_verify(uni, 20000, RngStream(7, 0)).pass);

  CHECK_THROWS_AS(run_verify(add, 5, RngStream(1, 0)), HornError);
}

TEST_CASE("null calibration: pass rate over 50 seeds") {
  HornInstance add(HornCase::AdditiveHermitian, {1.0, 0.0}, 0.5);
  int passes = 0;
  for (int seed = 0; seed < 50; ++seed)
    if (run_verify(add, 20000, RngStream(seed, 0)).pass) ++passes;
  CHECK(passes >= 48);
}

TEST_CASE("power: a 10% b-perturbation in the reference CDF is rejected") {
  HornInstance add(HornCase::AdditiveHermitian, {1.0, 0.0}, 0.5);
  VerifyOptions opts;
  opts.ref_b_scale = 1.1;
  VerificationReport rep = run_verify(add, 20000, RngStream(42, 0), opts);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("unitary verification with negative b wraps the support correctly") {
  HornInstance uni(HornCase::MultiplicativeUnitary, {1.0, -1.0}, -0.5);
  VerificationReport rep = run_verify(uni, 20000, RngStream(9, 0));
  CHECK(rep.pass);
  CHECK(rep.trace_violations == 0);
  CHECK(rep.interlacing_violations == 0);
}

TEST_CASE("verification at n = 3 tests both free marginals") {
  HornInstance add3(HornCase::AdditiveHermitian, {2.0, 0.5, -1.0}, 1.0);
  VerificationReport rep = run_verify(add3, 20000, RngStream(5, 0));
  CHECK(rep.ks_per_marginal.size() == 2);
  CHECK(rep.pass);
}

TEST_CASE("n = 4 runs identity monitors only") {
  HornInstance add4(HornCase::AdditiveHermitian, {3.0, 2.0, 1.0, 0.0}, 0.5);
  VerificationReport rep = run_verify(add4, 2000, RngStream(5, 0));
  CHECK(rep.ks_per_marginal.empty());
  CHECK(rep.pass);
  CHECK(rep.trace_violations == 0);
  CHECK(rep.interlacing_violations == 0);
}

TEST_SUITE_END();
