#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "freespectra/errors.hpp"

namespace freespectra::curvedata {

using Complex = std::complex<double>;

/// One monomial c * x^i * y^j of the implicit border curve.
struct CurveTerm {
    int xpow;
    int ypow;
    double coeff;
};

/// Degree-16 implicit equation of the outer spectrum border of the sum of
/// free unitaries of orders 2 and 3, in lambda = x + iy coordinates.
const std::vector<CurveTerm>& border_curve_terms();

/// Quartic whose positive root is the spectral radius of that sum:
/// x^4 + 2x^3 - 3x^2 - 8x - 3, ascending coefficients.
const std::vector<double>& radius_quartic_coeffs();

/// FNV-1a checksum over the canonical printing of the frozen data tables;
/// pinned in the tests to guard against transcription drift.
std::uint64_t data_checksum();

/// The 4x4 multiplication-by-s matrix on the quotient-algebra basis
/// ([g],[f],[t],[1]) for the operator u + u* + i(v + v*) at spectral
/// parameter z.  Entries are rational in z; throws PoleError within
/// `margin` of a denominator root.
Eigen::MatrixXcd multiplication_matrix(Complex z, double margin = 1e-8);

/// Roots of all denominators of multiplication_matrix (the grid must avoid
/// these).
const std::vector<Complex>& multiplication_matrix_poles();

}  // namespace freespectra::curvedata
