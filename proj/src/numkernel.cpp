#include "freespectra/numkernel.hpp"

#include <algorithm>
#include <cmath>

namespace freespectra::numkernel {

namespace {

bool root_order(const Complex& a, const Complex& b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma < mb;
    return std::arg(a) < std::arg(b);
}

// Parlett-Reinsch style balancing with powers of two.
void balance(Eigen::MatrixXcd& m) {
    const int n = static_cast<int>(m.rows());
    bool converged = false;
    int sweeps = 0;
    while (!converged && sweeps++ < 50) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(m(j, i));
                r += std::abs(m(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double f = 1.0;
            const double s = c + r;
            while (c < r / 2.0) {
                c *= 2.0;
                r /= 2.0;
                f *= 2.0;
            }
            while (c >= r * 2.0) {
                c /= 2.0;
                r *= 2.0;
                f /= 2.0;
            }
            if (c + r < 0.95 * s) {
                converged = false;
                m.col(i) *= f;
                m.row(i) /= f;
            }
        }
    }
}

}  // namespace

ComplexPolynomial::ComplexPolynomial(std::vector<Complex> ascending_coefficients)
    : coeffs_(std::move(ascending_coefficients)) {
    double maxc = 0.0;
    for (const auto& c : coeffs_) maxc = std::max(maxc, std::abs(c));
    if (maxc == 0.0) {
        coeffs_.clear();
        return;
    }
    while (!coeffs_.empty() && std::abs(coeffs_.back()) == 0.0) coeffs_.pop_back();
}

int ComplexPolynomial::degree() const {
    if (coeffs_.empty()) throw InvalidInput("degree of the zero polynomial is undefined");
    return static_cast<int>(coeffs_.size()) - 1;
}

Complex ComplexPolynomial::operator()(Complex x) const {
    Complex acc(0.0, 0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

ComplexPolynomial ComplexPolynomial::derivative() const {
    if (coeffs_.size() <= 1) return ComplexPolynomial{};
    std::vector<Complex> d(coeffs_.size() - 1);
    for (size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
    return ComplexPolynomial(std::move(d));
}

ComplexPolynomial ComplexPolynomial::from_roots(const std::vector<Complex>& roots) {
    std::vector<Complex> c{Complex(1.0, 0.0)};
    for (const auto& r : roots) {
        std::vector<Complex> next(c.size() + 1, Complex(0.0, 0.0));
        for (size_t k = 0; k < c.size(); ++k) {
            next[k] += -r * c[k];
            next[k + 1] += c[k];
        }
        c = std::move(next);
    }
    return ComplexPolynomial(std::move(c));
}

std::vector<Complex> poly_roots(const ComplexPolynomial& p) {
    if (p.is_zero()) throw InvalidInput("poly_roots: zero polynomial");
    const int n = p.degree();
    if (n < 1) throw InvalidInput("poly_roots: constant polynomial has no roots");
    const auto& c = p.coefficients();
    const Complex lead = c[n];
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / lead;
    balance(comp);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
    if (solver.info() != Eigen::Success) throw NumericFailure("poly_roots: eigensolver failed");
    std::vector<Complex> roots(n);
    for (int i = 0; i < n; ++i) roots[i] = solver.eigenvalues()(i);
    std::sort(roots.begin(), roots.end(), root_order);
    return roots;
}

std::vector<Complex> eig_dense(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols()) throw InvalidInput("eig_dense: matrix must be square");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    if (solver.info() != Eigen::Success) throw NumericFailure("eig_dense: eigensolver failed");
    std::vector<Complex> vals(m.rows());
    for (int i = 0; i < m.rows(); ++i) vals[i] = solver.eigenvalues()(i);
    std::sort(vals.begin(), vals.end(), root_order);
    return vals;
}

namespace {

double inf_norm(const Eigen::VectorXcd& v) { return v.cwiseAbs().maxCoeff(); }
double inf_norm(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

template <typename Mat>
void check_condition(const Mat& j) {
    const double nj = j.cwiseAbs().rowwise().sum().maxCoeff();
    Eigen::FullPivLU<Mat> lu(j);
    if (!lu.isInvertible()) throw SingularJacobian("newton_solve: singular Jacobian");
    const Mat inv = lu.inverse();
    const double ninv = inv.cwiseAbs().rowwise().sum().maxCoeff();
    if (nj * ninv > 1e14) throw SingularJacobian("newton_solve: Jacobian condition estimate > 1e14");
}

}  // namespace

NewtonResult newton_solve(const NewtonProblem& problem, const Eigen::VectorXcd& start) {
    Eigen::VectorXcd x = start;
    Eigen::VectorXcd f = problem.residual(x);
    double fnorm = inf_norm(f);
    auto jac = problem.jacobian ? problem.jacobian : finite_difference_jacobian(problem.residual);
    for (int iter = 1; iter <= problem.max_iterations; ++iter) {
        if (fnorm <= problem.tolerance)
            return NewtonResult{x, fnorm, iter - 1};
        const Eigen::MatrixXcd j = jac(x);
        check_condition(j);
        const Eigen::VectorXcd step = j.partialPivLu().solve(f);
        double damping = 1.0;
        bool accepted = false;
        for (int h = 0; h <= 30; ++h) {
            const Eigen::VectorXcd trial = x - damping * step;
            const Eigen::VectorXcd ft = problem.residual(trial);
            const double tn = inf_norm(ft);
            if (std::isfinite(tn) && tn < fnorm) {
                x = trial;
                f = ft;
                fnorm = tn;
                accepted = true;
                break;
            }
            damping *= 0.5;
        }
        if (!accepted) throw NoConvergence("newton_solve: no acceptable damped step");
    }
    if (fnorm <= problem.tolerance)
        return NewtonResult{x, fnorm, problem.max_iterations};
    throw NoConvergence("newton_solve: iteration limit reached, residual " + std::to_string(fnorm));
}

std::function<Eigen::MatrixXcd(const Eigen::VectorXcd&)>
finite_difference_jacobian(std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> residual,
                           double h) {
    return [residual = std::move(residual), h](const Eigen::VectorXcd& x) {
        const int n = static_cast<int>(x.size());
        Eigen::MatrixXcd j(n, n);
        for (int k = 0; k < n; ++k) {
            Eigen::VectorXcd xp = x, xm = x;
            xp(k) += h;
            xm(k) -= h;
            j.col(k) = (residual(xp) - residual(xm)) / (2.0 * h);
        }
        return j;
    };
}

RealNewtonResult newton_solve_real(const RealNewtonProblem& problem, const Eigen::VectorXd& start) {
    Eigen::VectorXd x = start;
    Eigen::VectorXd f = problem.residual(x);
    double fnorm = inf_norm(f);
    const int n = problem.dimension;
    for (int iter = 1; iter <= problem.max_iterations; ++iter) {
        if (fnorm <= problem.tolerance)
            return RealNewtonResult{x, fnorm, iter - 1};
        Eigen::MatrixXd j(n, n);
        for (int k = 0; k < n; ++k) {
            Eigen::VectorXd xp = x, xm = x;
            xp(k) += problem.fd_step;
            xm(k) -= problem.fd_step;
            j.col(k) = (problem.residual(xp) - problem.residual(xm)) / (2.0 * problem.fd_step);
        }
        check_condition(j);
        const Eigen::VectorXd step = j.partialPivLu().solve(f);
        double damping = 1.0;
        bool accepted = false;
        for (int h = 0; h <= 30; ++h) {
            const Eigen::VectorXd trial = x - damping * step;
            const Eigen::VectorXd ft = problem.residual(trial);
            const double tn = inf_norm(ft);
            if (std::isfinite(tn) && tn < fnorm) {
                x = trial;
                f = ft;
                fnorm = tn;
                accepted = true;
                break;
            }
            damping *= 0.5;
        }
        if (!accepted) throw NoConvergence("newton_solve_real: no acceptable damped step");
    }
    if (fnorm <= problem.tolerance)
        return RealNewtonResult{x, fnorm, problem.max_iterations};
    throw NoConvergence("newton_solve_real: iteration limit reached");
}

double bisect_crossing(const std::function<double(double)>& g, double a, double b, double xtol) {
    if (!(a < b)) throw InvalidInput("bisect_crossing: need a < b");
    if (!(xtol > 0.0)) throw InvalidInput("bisect_crossing: xtol must be positive");
    double ga = g(a), gb = g(b);
    if (!std::isfinite(ga) || !std::isfinite(gb))
        throw InvalidInput("bisect_crossing: endpoint not finite");
    if (ga == 0.0) return a;
    if (gb == 0.0) return b;
    if (ga * gb > 0.0) throw BracketError("bisect_crossing: no sign change on [a,b]");
    while (b - a > xtol) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;  // ran out of precision
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if (ga * gm < 0.0) {
            b = mid;
        } else {
            a = mid;
            ga = gm;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace freespectra::numkernel
