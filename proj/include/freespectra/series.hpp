#pragma once

#include <complex>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "freespectra/errors.hpp"

namespace freespectra::series {

using Rational = boost::multiprecision::cpp_rational;

/// Complex number with exact rational real and imaginary parts.
struct RationalComplex {
    Rational re, im;

    RationalComplex() : re(0), im(0) {}
    RationalComplex(Rational r) : re(std::move(r)), im(0) {}
    RationalComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    explicit RationalComplex(int v) : re(v), im(0) {}

    static RationalComplex from_double(double r, double i = 0.0);

    bool operator==(const RationalComplex&) const = default;
    RationalComplex operator-() const { return {-re, -im}; }
    RationalComplex& operator+=(const RationalComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    RationalComplex& operator-=(const RationalComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend RationalComplex operator+(RationalComplex a, const RationalComplex& b) { return a += b; }
    friend RationalComplex operator-(RationalComplex a, const RationalComplex& b) { return a -= b; }
    friend RationalComplex operator*(const RationalComplex& a, const RationalComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    RationalComplex& operator*=(const RationalComplex& o) { return *this = *this * o; }
    friend RationalComplex operator/(const RationalComplex& a, const RationalComplex& b);

    bool is_zero() const { return re == 0 && im == 0; }
    std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
    std::string to_string() const;
};

/// Truncated formal power series over exact rational-complex coefficients.
/// coeff[k] is the order-k coefficient; all series share a fixed truncation
/// order supplied by the caller.
using PowerSeries = std::vector<RationalComplex>;

PowerSeries truncate(PowerSeries s, std::size_t order);
PowerSeries mul(const PowerSeries& a, const PowerSeries& b, std::size_t order);

/// Multiplicative inverse; requires a nonzero constant term.
PowerSeries reciprocal(const PowerSeries& a, std::size_t order);

/// Composition a(b(w)); requires b(0) = 0.
PowerSeries compose(const PowerSeries& a, const PowerSeries& b, std::size_t order);

/// Compositional inverse of g with g(0) = 0, g'(0) = 1, via Newton iteration
/// with order doubling.
PowerSeries compositional_inverse(const PowerSeries& g, std::size_t order);

}  // namespace freespectra::series
