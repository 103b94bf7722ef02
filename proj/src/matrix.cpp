#include "hornlab/matrix.hpp"

#include <cmath>

namespace hornlab {

ComplexMatrix::ComplexMatrix(Mat m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) fail(ErrorCode::InvalidInstance, "matrix must be square");
  if (!m_.allFinite()) fail(ErrorCode::InvalidInstance, "matrix has non-finite entries");
}

ComplexMatrix ComplexMatrix::diagonal(const cvec& d) {
  Mat m = Mat::Zero(d.size(), d.size());
  for (std::size_t j = 0; j < d.size(); ++j) m(j, j) = d[j];
  return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& d) {
  cvec c(d.begin(), d.end());
  return diagonal(c);
}

bool ComplexMatrix::is_hermitian(double tol) const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool ComplexMatrix::is_unitary(double tol) const {
  Mat d = m_.adjoint() * m_ - Mat::Identity(n(), n());
  return d.cwiseAbs().maxCoeff() <= tol;
}

bool ComplexMatrix::is_positive_definite(double tol) const {
  if (!is_hermitian(std::max(tol, default_tol()))) return false;
  Eigen::SelfAdjointEigenSolver<Mat> es(m_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::ConvergenceFailure, "eigen decomposition failed");
  return es.eigenvalues().minCoeff() > -tol;
}

Spectrum hermitian_eigenvalues(const ComplexMatrix& h, double tol) {
  if (!h.is_hermitian(tol)) fail(ErrorCode::NotHermitian, "matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(h.mat(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + h.n());
  return Spectrum::from_unsorted(std::move(v), tol);
}

void hermitian_eigensystem(const Mat& h, Eigen::VectorXd& values, Mat& vectors) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
  values = es.eigenvalues();
  vectors = es.eigenvectors();
}

Mat psd_sqrt(const Mat& h) {
  Eigen::VectorXd w;
  Mat v;
  hermitian_eigensystem(h, w, v);
  if (w.minCoeff() <= 0.0)
    fail(ErrorCode::NotPositiveDefinite, "matrix is not positive definite");
  Eigen::VectorXd r = w.cwiseSqrt();
  return v * r.asDiagonal() * v.adjoint();
}

PhaseSpectrum unitary_eigenphases(const ComplexMatrix& u, double tol) {
  if (!u.is_unitary(tol)) fail(ErrorCode::NotUnitary, "matrix is not unitary");
  Eigen::ComplexEigenSolver<Mat> es(u.mat(), /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::ConvergenceFailure, "complex eigensolver did not converge");
  std::vector<double> ang(u.n());
  for (int j = 0; j < u.n(); ++j) {
    cxd lam = es.eigenvalues()(j);
    if (std::abs(std::abs(lam) - 1.0) > 1e-8)
      fail(ErrorCode::NotUnitary, "eigenvalue off the unit circle");
    ang[j] = std::atan2(lam.imag(), lam.real());  // projection onto the circle
  }
  return PhaseSpectrum::from_unsorted(std::move(ang));
}

ComplexMatrix qr_phase_fixed(const ComplexMatrix& g) {
  const int n = g.n();
  Eigen::HouseholderQR<Mat> qr(g.mat());
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  double scale = std::max(1.0, g.max_abs());
  for (int j = 0; j < n; ++j) {
    double d = std::abs(r(j, j));
    if (d <= 1e-13 * n * scale) fail(ErrorCode::SingularInput, "singular input to QR");
    q.col(j) *= r(j, j) / d;
  }
  return ComplexMatrix(std::move(q));
}

cxd leading_principal_minor(const ComplexMatrix& m, int j) {
  if (j < 1 || j > m.n()) fail(ErrorCode::IndexOutOfRange, "minor index out of range");
  return m.mat().topLeftCorner(j, j).determinant();
}

cxd generalized_power(const ComplexMatrix& x, const SphericalIndex& s) {
  const int n = x.n();
  if (s.n() != n) fail(ErrorCode::LengthMismatch, "index length != matrix dimension");
  double scale = std::max(1.0, x.max_abs());
  cxd out = 1.0;
  for (int j = 1; j <= n; ++j) {
    cxd minor = leading_principal_minor(x, j);
    cxd expo = (j < n) ? s.values[j - 1] - s.values[j] - 1.0 : s.values[n - 1];
    if (expo == 0.0) continue;
    bool integral = std::abs(expo.imag()) == 0.0 &&
                    std::abs(expo.real() - std::round(expo.real())) < 1e-12;
    if (std::abs(minor) < 1e-13 * std::pow(scale, j)) {
      // 0^k with positive integer k is an honest zero; anything else is a
      // branch-point evaluation.
      if (integral && expo.real() > 0.0) return 0.0;
      fail(ErrorCode::SingularMinor, "vanishing principal minor in |X|^s");
    }
    if (integral) {
      long k = std::lround(expo.real());
      cxd p = 1.0;
      cxd base = (k < 0) ? 1.0 / minor : minor;
      for (long i = 0; i < std::labs(k); ++i) p *= base;
      out *= p;
    } else {
      out *= std::exp(expo * std::log(minor));  // principal branch
    }
  }
  return out;
}

}  // namespace hornlab
