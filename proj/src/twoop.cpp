#include "freespectra/twoop.hpp"

#include <cmath>

#include "freespectra/numkernel.hpp"
#include "freespectra/oracle.hpp"

namespace freespectra::twoop {

TwoOpState lambda_of_st(const OperatorModel& a_model, const OperatorModel& b_model, Complex s,
                        Complex t) {
    TwoOpState st;
    st.s = s;
    st.t = t;
    st.f = a_model.mgf(s);
    st.g = b_model.mgf(t);
    const Complex sf = s * st.f;
    const Complex tg = t * st.g;
    if (std::abs(sf) < 1e-12 || std::abs(tg) < 1e-12)
        throw DegenerateError("lambda_of_st: s f(s) = 0 is excluded");
    if (std::abs(sf - tg) > 1e-10)
        throw ConstraintError("lambda_of_st: s f(s) != t g(t)");
    st.lambda = (st.f + st.g - 1.0) / sf;
    const Complex alt = 1.0 / s + 1.0 / t - 1.0 / sf;
    if (std::abs(st.lambda - alt) > 1e-10)
        throw ConstraintError("lambda_of_st: the two lambda forms disagree");
    st.residual = std::max(std::abs(sf - tg), std::abs(st.lambda - alt));
    return st;
}

Classification classify_two(const OperatorModel& a_model, const OperatorModel& b_model,
                            Complex s, Complex t) {
    // validate the coupling only; s f(s) = t g(t) = 0 (s = t = 0) is a
    // legitimate classification point even though lambda is undefined there
    const Complex sf = s * a_model.mgf(s);
    const Complex tg = t * b_model.mgf(t);
    if (std::abs(sf - tg) > 1e-10)
        throw ConstraintError("classify_two: s f(s) != t g(t)");
    const double prod = a_model.x_value(s) * b_model.x_value(t);
    if (std::abs(prod - 1.0) <= kTwoBoundaryBand) return Classification::Boundary;
    return prod < 1.0 ? Classification::Outside : Classification::Undetermined;
}

double product_spectral_radius(double x_a_norm_sq, double x_b_norm_sq) {
    if (x_a_norm_sq < 0.0 || x_b_norm_sq < 0.0)
        throw InvalidInput("product_spectral_radius: squared norms must be >= 0");
    return std::sqrt(x_a_norm_sq * x_b_norm_sq);
}

namespace {

using Element = oracle::AlgebraElement<Complex>;
using oracle::GroupSpec;
using oracle::GroupWord;

// sum_{j=1}^{order-1} c^j u^j for the generator of the given factor
Element centered_geometric(int factor, int order, Complex c) {
    Element e;
    Complex p(1.0, 0.0);
    for (int j = 1; j < order; ++j) {
        p *= c;
        e += Element::word(GroupWord{{{factor, j}}}, p);
    }
    return e;
}

}  // namespace

double factorization_check(int m, int n, Complex s, Complex t) {
    const auto a_model = OperatorModel::cyclic(m);
    const auto b_model = OperatorModel::cyclic(n);
    const TwoOpState st = lambda_of_st(a_model, b_model, s, t);

    const GroupSpec group({m, n});
    const Element a = Element::word(GroupWord{{{0, 1}}});
    const Element b = Element::word(GroupWord{{{1, 1}}});

    Element lhs = Element::unit();
    lhs *= st.lambda;
    lhs -= a;
    lhs -= b;

    Element left = Element::unit();  // 1 - s a
    {
        Element sa = a;
        sa *= s;
        left -= sa;
    }
    Element right = Element::unit();  // 1 - t b
    {
        Element tb = b;
        tb *= t;
        right -= tb;
    }
    // 1 - (ring a)(ring b)/(f g) = 1 - (sum s^j a^j)(sum t^k b^k)
    Element middle = Element::unit();
    middle -= oracle::algebra_mul(group, centered_geometric(0, m, s),
                                  centered_geometric(1, n, t));

    Element rhs = oracle::algebra_mul(group, left, oracle::algebra_mul(group, middle, right));
    rhs *= st.g / s;

    double scale = 0.0;
    for (const auto& [w, c] : lhs.terms) scale = std::max(scale, std::abs(c));
    for (const auto& [w, c] : rhs.terms) scale = std::max(scale, std::abs(c));
    Element diff = rhs;
    diff -= lhs;
    double dev = 0.0;
    for (const auto& [w, c] : diff.terms) dev = std::max(dev, std::abs(c));
    return scale > 0.0 ? dev / scale : dev;
}

Complex feasible_t(int m, int n, Complex s) {
    if (std::abs(s) < 1e-14) return Complex(0.0, 0.0);
    Complex sm(1.0, 0.0);
    for (int j = 0; j < m; ++j) sm *= s;
    // s(1 - t^n) - t(1 - s^m) = 0: ascending coefficients in t
    std::vector<Complex> coeffs(n + 1);
    coeffs[0] = s;
    coeffs[1] = -(1.0 - sm);
    coeffs[n] += -s;
    const auto roots = numkernel::poly_roots(numkernel::ComplexPolynomial(coeffs));
    Complex best = roots.front();
    for (const auto& r : roots)
        if (std::abs(r - s) < std::abs(best - s)) best = r;
    return best;
}

}  // namespace freespectra::twoop
