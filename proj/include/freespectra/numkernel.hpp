#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "freespectra/errors.hpp"

namespace freespectra::numkernel {

using Complex = std::complex<double>;

/// Univariate polynomial with complex coefficients, stored in ascending
/// degree order.  Trailing coefficients that are exactly zero relative to
/// the largest coefficient are stripped on normalization.
class ComplexPolynomial {
  public:
    ComplexPolynomial() = default;
    explicit ComplexPolynomial(std::vector<Complex> ascending_coefficients);

    /// Degree after normalization.  Throws InvalidInput for the zero polynomial.
    int degree() const;
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Complex>& coefficients() const { return coeffs_; }

    Complex operator()(Complex x) const;  // Horner evaluation
    ComplexPolynomial derivative() const;

    /// Builds prod (x - r_i) from the given roots.
    static ComplexPolynomial from_roots(const std::vector<Complex>& roots);

  private:
    std::vector<Complex> coeffs_;  // empty == zero polynomial
};

/// All roots with multiplicity, via the balanced companion matrix.
/// Ordered by |r| ascending, ties broken by argument.
std::vector<Complex> poly_roots(const ComplexPolynomial& p);

/// Eigenvalues of a square complex matrix, same ordering convention as
/// poly_roots.  Throws InvalidInput for non-square input.
std::vector<Complex> eig_dense(const Eigen::MatrixXcd& m);

struct NewtonProblem {
    int dimension = 0;
    std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> residual;
    std::function<Eigen::MatrixXcd(const Eigen::VectorXcd&)> jacobian;  // optional
    double tolerance = 1e-12;
    int max_iterations = 100;
};

struct NewtonResult {
    Eigen::VectorXcd solution;
    double residual_norm = 0.0;  // infinity norm of residual at solution
    int iterations = 0;
};

/// Damped Newton iteration (step halving, at most 30 halvings per step).
/// Succeeds when the residual infinity norm drops below problem.tolerance.
NewtonResult newton_solve(const NewtonProblem& problem, const Eigen::VectorXcd& start);

/// Central finite-difference Jacobian for holomorphic residual maps.
std::function<Eigen::MatrixXcd(const Eigen::VectorXcd&)>
finite_difference_jacobian(std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> residual,
                           double h = 1e-7);

/// Real-variable counterpart used for systems mixing holomorphic equations
/// with real constraints (e.g. a modulus condition).
struct RealNewtonProblem {
    int dimension = 0;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> residual;
    double tolerance = 1e-12;
    int max_iterations = 100;
    double fd_step = 1e-7;
};

struct RealNewtonResult {
    Eigen::VectorXd solution;
    double residual_norm = 0.0;
    int iterations = 0;
};

RealNewtonResult newton_solve_real(const RealNewtonProblem& problem, const Eigen::VectorXd& start);

/// Bisection for a bracketed sign change of a continuous real function.
/// Uses at most ceil(log2((b-a)/xtol)) + 2 evaluations of g.
double bisect_crossing(const std::function<double(double)>& g, double a, double b, double xtol);

}  // namespace freespectra::numkernel
