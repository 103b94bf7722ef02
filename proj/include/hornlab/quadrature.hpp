// Small quadrature/summation toolbox: Gauss-Legendre rules with cached
// nodes, and Neumaier compensated accumulation for long cancellation-prone
// sums.

#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "hornlab/types.hpp"

namespace hornlab {

// Accumulator with Neumaier's correction term.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0, comp_ = 0.0;
};

class CompensatedCSum {
 public:
  void add(cxd z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  cxd value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_, im_;
};

// Nodes/weights of the m-point Gauss-Legendre rule on [-1, 1], cached.
void gauss_legendre_rule(int m, std::vector<double>& nodes, std::vector<double>& weights);

template <typename F>
double gauss_legendre(F&& f, double a, double b, int m) {
  std::vector<double> x, w;
  gauss_legendre_rule(m, x, w);
  const double mid = (a + b) / 2.0, half = (b - a) / 2.0;
  CompensatedSum acc;
  for (int i = 0; i < m; ++i) acc.add(w[i] * f(mid + half * x[i]));
  return half * acc.value();
}

template <typename F>
cxd gauss_legendre_c(F&& f, double a, double b, int m) {
  std::vector<double> x, w;
  gauss_legendre_rule(m, x, w);
  const double mid = (a + b) / 2.0, half = (b - a) / 2.0;
  CompensatedCSum acc;
  for (int i = 0; i < m; ++i) acc.add(w[i] * f(mid + half * x[i]));
  return half * acc.value();
}

}  // namespace hornlab
