#include "hornlab/quadrature.hpp"

#include <cmath>

namespace hornlab {

namespace {

// Newton iteration on Legendre polynomials; standard Golub-Welsch-free
// construction, accurate to machine precision for the sizes used here.
void build_rule(int m, std::vector<double>& x, std::vector<double>& w) {
  x.resize(m);
  w.resize(m);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < m; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = m * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[m - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[m - 1 - i] = w[i];
  }
}

}  // namespace

void gauss_legendre_rule(int m, std::vector<double>& nodes, std::vector<double>& weights) {
  if (m < 1) fail(ErrorCode::InvalidInstance, "quadrature order must be positive");
  static std::mutex mu;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) {
    std::pair<std::vector<double>, std::vector<double>> rule;
    build_rule(m, rule.first, rule.second);
    it = cache.emplace(m, std::move(rule)).first;
  }
  nodes = it->second.first;
  weights = it->second.second;
}

}  // namespace hornlab
