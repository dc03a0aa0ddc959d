#pragma once

#include <complex>

#include "freespectra/freesum.hpp"
#include "freespectra/model.hpp"

namespace freespectra::twoop {

using Complex = std::complex<double>;
using dist::OperatorModel;
using freesum::Classification;

/// A point of the two-summand parametrization: s, t with s f(s) = t g(t),
/// and the spectral parameter lambda = (f + g - 1)/(s f).
struct TwoOpState {
    Complex s, t;
    Complex f, g;  // f(s), g(t)
    Complex lambda;
    double residual = 0.0;
};

/// Band on |x_a * x_b - 1| inside which a pair counts as Boundary.
constexpr double kTwoBoundaryBand = 1e-8;

/// Builds the state at a coupling-feasible pair (s, t).  Evaluates lambda in
/// both algebraic forms, (f+g-1)/(sf) and 1/s + 1/t - 1/(sf), and requires
/// them to agree within 1e-10.
TwoOpState lambda_of_st(const OperatorModel& a_model, const OperatorModel& b_model, Complex s,
                        Complex t);

/// Resolvent-set test for a + b at the pair (s, t): Outside iff
/// x_a(s) * x_b(t) < 1, Boundary within the band.
Classification classify_two(const OperatorModel& a_model, const OperatorModel& b_model,
                            Complex s, Complex t);

/// Spectral radius of the product of centered *-free elements:
/// sqrt(x_a * x_b) for squared L2-norms x_a, x_b.  The circle of this
/// radius lies in the spectrum of the product.
double product_spectral_radius(double x_a_norm_sq, double x_b_norm_sq);

/// Expands both sides of the resolvent factorization
///   lambda - a - b = (g/s) (1 - s a) (1 - (ring a)(ring b)/(f g)) (1 - t b)
/// for cyclic generators a of order m and b of order n, in the exact group
/// algebra of Z_m * Z_n.  Returns the largest coefficient deviation divided
/// by the largest coefficient magnitude.
double factorization_check(int m, int n, Complex s, Complex t);

/// Coupling-feasible partner: the root t of s(1 - t^n) - t(1 - s^m) = 0
/// closest to s (the branch continued from t = s near 0).
Complex feasible_t(int m, int n, Complex s);

}  // namespace freespectra::twoop
