#include "hornlab/sampling.hpp"

#include <cmath>

namespace hornlab {

namespace {

// Column-major fill so the draw order is part of the stream contract.
Mat ginibre(int n, RngStream& rng) {
  Mat g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = rng.cnormal();
  return g;
}

Vec unit_vector(int n, RngStream& rng) {
  Vec w(n);
  for (int i = 0; i < n; ++i) w(i) = rng.cnormal();
  double nrm = w.norm();
  while (nrm == 0.0) {  // probability zero, but keeps the contract total
    for (int i = 0; i < n; ++i) w(i) = rng.cnormal();
    nrm = w.norm();
  }
  return w / nrm;
}

Spectrum sorted_eigs(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::ConvergenceFailure, "eigensolver did not converge");
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + h.rows());
  return Spectrum::from_unsorted(std::move(v));
}

}  // namespace

ComplexMatrix haar_unitary(int n, RngStream& rng) {
  if (n < 1) fail(ErrorCode::InvalidInstance, "dimension must be positive");
  return qr_phase_fixed(ComplexMatrix(ginibre(n, rng)));
}

ComplexMatrix sample_gue(int n, double eps, RngStream& rng) {
  if (n < 1 || !(eps > 0.0)) fail(ErrorCode::InvalidInstance, "need n >= 1, eps > 0");
  Mat h(n, n);
  const double sdiag = std::sqrt(2.0) * eps;
  for (int j = 0; j < n; ++j) {
    h(j, j) = sdiag * rng.normal();
    for (int i = j + 1; i < n; ++i) {
      cxd z = eps * rng.cnormal();
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return ComplexMatrix(std::move(h));
}

Spectrum sample_additive_rank1(const HornInstance& inst, RngStream& rng) {
  inst.validate();
  if (inst.kase != HornCase::AdditiveHermitian)
    fail(ErrorCode::InvalidInstance, "instance is not additive");
  Vec w = unit_vector(inst.n, rng);
  Mat h = inst.b * (w * w.adjoint());
  for (int j = 0; j < inst.n; ++j) h(j, j) += inst.a[j];
  return sorted_eigs(h);
}

Spectrum sample_additive_literal(const HornInstance& inst, RngStream& rng) {
  inst.validate();
  if (inst.kase != HornCase::AdditiveHermitian)
    fail(ErrorCode::InvalidInstance, "instance is not additive");
  Mat u = haar_unitary(inst.n, rng).mat();
  Mat v = haar_unitary(inst.n, rng).mat();
  Mat da = Mat::Zero(inst.n, inst.n);
  for (int j = 0; j < inst.n; ++j) da(j, j) = inst.a[j];
  Mat db = Mat::Zero(inst.n, inst.n);
  db(0, 0) = inst.b;
  Mat h = u * da * u.adjoint() + v * db * v.adjoint();
  return sorted_eigs((h + h.adjoint()) / 2.0);
}

Spectrum sample_mult_pos(const HornInstance& inst, RngStream& rng) {
  inst.validate();
  if (inst.kase != HornCase::MultiplicativePositive)
    fail(ErrorCode::InvalidInstance, "instance is not multiplicative-positive");
  const int n = inst.n;
  Mat w = haar_unitary(n, rng).mat();
  Vec eb = Vec::Ones(n);
  eb(0) = std::exp(inst.b);
  Mat core = w * eb.asDiagonal() * w.adjoint();
  Eigen::VectorXd ea2(n);
  for (int j = 0; j < n; ++j) ea2(j) = std::exp(inst.a[j] / 2.0);
  Mat c = ea2.asDiagonal() * core * ea2.asDiagonal();
  Spectrum eig = sorted_eigs((c + c.adjoint()) / 2.0);
  for (double& v : eig.values) {
    if (!(v > 0.0)) fail(ErrorCode::NonPositiveEigenvalue, "eigenvalue <= 0 in Herm+ sample");
    v = std::log(v);
  }
  return eig;
}

PhaseSpectrum sample_mult_unitary(const HornInstance& inst, RngStream& rng) {
  inst.validate();
  if (inst.kase != HornCase::MultiplicativeUnitary)
    fail(ErrorCode::InvalidInstance, "instance is not multiplicative-unitary");
  const int n = inst.n;
  Mat v = haar_unitary(n, rng).mat();
  Vec eb = Vec::Ones(n);
  eb(0) = std::polar(1.0, inst.b);
  Vec ea(n);
  for (int j = 0; j < n; ++j) ea(j) = std::polar(1.0, inst.a[j]);
  Mat c = ea.asDiagonal() * (v * eb.asDiagonal() * v.adjoint());
  return unitary_eigenphases(ComplexMatrix(std::move(c)), 1e-10 * n);
}

Spectrum sample_singular_rank1(const std::vector<double>& x, double y_scalar,
                               RngStream& rng) {
  const int n = static_cast<int>(x.size());
  if (n < 1 || !(y_scalar > 0.0))
    fail(ErrorCode::InvalidInstance, "need nonempty x and y > 0");
  for (int j = 0; j < n; ++j) {
    if (!(x[j] > 0.0)) fail(ErrorCode::InvalidInstance, "x must be positive");
    if (j + 1 < n && !(x[j] > x[j + 1]))
      fail(ErrorCode::InvalidInstance, "x must be strictly descending");
  }
  // Squared singular values of U X U* V Y V* are the eigenvalues of
  // X W Y^2 W* X with W Haar.
  Mat w = haar_unitary(n, rng).mat();
  Vec y2 = Vec::Ones(n);
  y2(0) = y_scalar * y_scalar;
  Eigen::VectorXd xd(n);
  for (int j = 0; j < n; ++j) xd(j) = x[j];
  Mat m = xd.asDiagonal() * (w * y2.asDiagonal() * w.adjoint()) * xd.asDiagonal();
  Spectrum out = sorted_eigs((m + m.adjoint()) / 2.0);
  for (double v : out.values)
    if (!(v > 0.0)) fail(ErrorCode::NonPositiveEigenvalue, "squared singular value <= 0");
  return out;
}

}  // namespace hornlab
