// Seeded random-matrix samplers: Haar unitaries, GUE with width eps, the
// three rank-1 Horn models, and the squared-singular-value variant.

#pragma once

#include "hornlab/matrix.hpp"
#include "hornlab/rng.hpp"
#include "hornlab/types.hpp"

namespace hornlab {

// Haar-distributed U(n) matrix via QR of a complex Ginibre sample with the
// phase-fixed R convention.
ComplexMatrix haar_unitary(int n, RngStream& rng);

// GUE matrix with density proportional to exp(-tr H^2 / (4 eps^2)):
// diagonal entries N(0, 2 eps^2), off-diagonal real/imag parts N(0, eps^2).
ComplexMatrix sample_gue(int n, double eps, RngStream& rng);

// Eigenvalues of diag(a) + b w w*, w a uniform unit vector; identical in law
// to the literal two-rotation model by conjugation invariance.
Spectrum sample_additive_rank1(const HornInstance& inst, RngStream& rng);

// The literal model U a U* + V b V* with both rotations sampled; kept for
// the law-equivalence test.
Spectrum sample_additive_literal(const HornInstance& inst, RngStream& rng);

// Log-eigenvalues of e^{a/2} W diag(e^b, 1, ..., 1) W* e^{a/2}, W Haar.
Spectrum sample_mult_pos(const HornInstance& inst, RngStream& rng);

// Eigenphases of diag(e^{ia}) V diag(e^{ib}, 1, ..., 1) V*, V Haar.
PhaseSpectrum sample_mult_unitary(const HornInstance& inst, RngStream& rng);

// Squared singular values of U X U* V Y V* with Y = diag(y, 1, ..., 1);
// equal in law to exp of sample_mult_pos at a = 2 log x, b = 2 log y.
Spectrum sample_singular_rank1(const std::vector<double>& x, double y_scalar,
                               RngStream& rng);

}  // namespace hornlab
