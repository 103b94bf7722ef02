// Dense complex matrix kernels: structural predicates, Hermitian eigenvalues,
// unitary eigenphases, phase-fixed QR (Haar machinery), leading principal
// minors and Selberg's generalized power function.

#pragma once

#include <Eigen/Dense>

#include "hornlab/types.hpp"

namespace hornlab {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(Mat m);

  static ComplexMatrix identity(int n) { return ComplexMatrix(Mat::Identity(n, n)); }
  static ComplexMatrix zero(int n) { return ComplexMatrix(Mat::Zero(n, n)); }
  static ComplexMatrix diagonal(const cvec& d);
  static ComplexMatrix diagonal(const std::vector<double>& d);

  int n() const { return static_cast<int>(m_.rows()); }
  const Mat& mat() const { return m_; }
  cxd operator()(int i, int j) const { return m_(i, j); }

  double max_abs() const { return m_.size() ? m_.cwiseAbs().maxCoeff() : 0.0; }

  // Default structural tolerance, scaled to dimension and entry magnitude.
  double default_tol() const { return 1e-10 * n() * std::max(1.0, max_abs()); }

  bool is_hermitian(double tol) const;
  bool is_unitary(double tol) const;
  bool is_positive_definite(double tol) const;

 private:
  Mat m_;
};

// Eigenvalues of a Hermitian matrix, sorted descending.  The sum matches
// tr H within 1e-10 * n * ||H||.
Spectrum hermitian_eigenvalues(const ComplexMatrix& h, double tol);

// Full eigensystem of a Hermitian matrix (ascending values, matching columns).
void hermitian_eigensystem(const Mat& h, Eigen::VectorXd& values, Mat& vectors);

// Unique positive-definite square root via eigendecomposition.
Mat psd_sqrt(const Mat& h);

// Eigenphases of a unitary matrix, each in (-pi, pi], sorted descending.
PhaseSpectrum unitary_eigenphases(const ComplexMatrix& u, double tol);

// Q factor of a QR factorization of G, with columns rescaled so the diagonal
// of R is real positive.  This makes Q of a Ginibre sample Haar distributed.
ComplexMatrix qr_phase_fixed(const ComplexMatrix& g);

// Determinant of the upper-left j x j block, 1 <= j <= n.
cxd leading_principal_minor(const ComplexMatrix& m, int j);

// Selberg's generalized power |X|^s = prod_j det(X_jxj)^(s_j - s_{j+1} - 1)
// * det(X)^(s_n), principal branch for non-integer exponents.
cxd generalized_power(const ComplexMatrix& x, const SphericalIndex& s);

}  // namespace hornlab
