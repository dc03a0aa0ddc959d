#include "freespectra/series.hpp"

#include <cmath>
#include <sstream>

namespace freespectra::series {

RationalComplex RationalComplex::from_double(double r, double i) {
    if (!std::isfinite(r) || !std::isfinite(i))
        throw InvalidInput("RationalComplex: non-finite input");
    return {Rational(r), Rational(i)};
}

RationalComplex operator/(const RationalComplex& a, const RationalComplex& b) {
    const Rational d = b.re * b.re + b.im * b.im;
    if (d == 0) throw DegenerateError("RationalComplex: division by zero");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

std::string RationalComplex::to_string() const {
    std::ostringstream out;
    out << re;
    if (im != 0) out << (im > 0 ? "+" : "") << im << "i";
    return out.str();
}

PowerSeries truncate(PowerSeries s, std::size_t order) {
    s.resize(order + 1);
    return s;
}

PowerSeries mul(const PowerSeries& a, const PowerSeries& b, std::size_t order) {
    PowerSeries out(order + 1);
    for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) {
            if (b[j].is_zero()) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

PowerSeries reciprocal(const PowerSeries& a, std::size_t order) {
    if (a.empty() || a[0].is_zero())
        throw DegenerateError("series reciprocal: zero constant term");
    PowerSeries out(order + 1);
    const RationalComplex inv0 = RationalComplex(1) / a[0];
    out[0] = inv0;
    for (std::size_t k = 1; k <= order; ++k) {
        RationalComplex acc;  // sum_{j=1..k} a_j * out_{k-j}
        for (std::size_t j = 1; j <= k && j < a.size(); ++j) acc += a[j] * out[k - j];
        out[k] = -(inv0 * acc);
    }
    return out;
}

PowerSeries compose(const PowerSeries& a, const PowerSeries& b, std::size_t order) {
    if (b.size() > 0 && !b[0].is_zero())
        throw InvalidInput("series compose: inner series must vanish at 0");
    PowerSeries out(order + 1);
    // Horner over the outer coefficients
    for (std::size_t k = std::min(a.size(), order + 2); k-- > 0;) {
        out = mul(out, b, order);
        out[0] += a[k];
    }
    return out;
}

PowerSeries compositional_inverse(const PowerSeries& g, std::size_t order) {
    if (g.size() < 2 || !g[0].is_zero() || g[1] != RationalComplex(1))
        throw InvalidInput("compositional inverse: need g(0)=0, g'(0)=1");
    // derivative of g
    PowerSeries gp(g.size() > 1 ? g.size() - 1 : 1);
    for (std::size_t k = 1; k < g.size(); ++k) gp[k - 1] = RationalComplex(static_cast<int>(k)) * g[k];

    PowerSeries h(2);
    h[1] = RationalComplex(1);  // first-order inverse
    std::size_t prec = 1;
    while (prec < order) {
        prec = std::min(order, 2 * prec);
        h = truncate(std::move(h), prec);
        PowerSeries gh = compose(g, h, prec);
        gh[1] -= RationalComplex(1);  // g(h(w)) - w
        const PowerSeries gph = compose(gp, h, prec);
        const PowerSeries corr = mul(gh, reciprocal(gph, prec), prec);
        for (std::size_t k = 0; k <= prec; ++k) h[k] -= corr[k];
    }
    return truncate(std::move(h), order);
}

}  // namespace freespectra::series
