#include "freespectra/curve_data.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "freespectra/numkernel.hpp"

namespace freespectra::curvedata {

const std::vector<CurveTerm>& border_curve_terms() {
    static const std::vector<CurveTerm> terms = {
        // degree 16
        {16, 0, 1}, {14, 2, 8}, {12, 4, 28}, {10, 6, 56}, {8, 8, 70},
        {6, 10, 56}, {4, 12, 28}, {2, 14, 8}, {0, 16, 1},
        // degree 15
        {15, 0, -6}, {13, 2, 54}, {11, 4, 226}, {9, 6, 238}, {7, 8, -18},
        {5, 10, -158}, {3, 12, -74}, {1, 14, -6},
        // degree 14
        {14, 0, 5}, {12, 2, -65}, {10, 4, 305}, {8, 6, 435}, {6, 8, -225},
        {4, 10, -179}, {2, 12, 107}, {0, 14, 1},
        // degree 13
        {13, 0, 32}, {11, 2, -400}, {9, 4, -400}, {7, 6, 480}, {5, 8, 384},
        {3, 10, -80}, {1, 12, -16},
        // degree 12
        {12, 0, -59}, {10, 2, 74}, {8, 4, -1033}, {6, 6, -548}, {4, 8, 547},
        {2, 10, -70}, {0, 12, 1},
        // degree 11
        {11, 0, -40}, {9, 2, 776}, {7, 4, -1008}, {5, 6, 112}, {3, 8, -104},
        {1, 10, 8},
        // degree 10
        {10, 0, 136}, {8, 2, 48}, {6, 4, 736}, {4, 6, -176}, {2, 8, 24},
        // degree 9
        {9, 0, -32}, {7, 2, 224}, {5, 4, -224}, {3, 6, 32},
        // degree 8
        {8, 0, -48}, {6, 2, -32}, {4, 4, 16},
    };
    return terms;
}

const std::vector<double>& radius_quartic_coeffs() {
    static const std::vector<double> coeffs = {-3.0, -8.0, -3.0, 2.0, 1.0};
    return coeffs;
}

namespace {

// polynomial coefficient rows of the matrix data, ascending powers of z
const std::vector<std::vector<double>> kNumerators = {
    {-48, 0, 4},                       // (0,0)
    {1},                               // (0,1) over z
    {16, 0, 1},                        // (0,2)
    {128, 0, -48, 0, 16, 0, 1},        // (0,3)
    {-48, 0, -24, 0, 1},               // (1,0)
    {1},                               // (1,1) over z
    {8, 0, -2},                        // (1,2), negated 2z^2-8
    {128, 0, 48, 0, 16, 0, -1},        // (1,3), negated z^6-16z^4-48z^2-128
    {-16, 0, 24, 0, -1},               // (2,0), negated z^4-24z^2+16
    {0},                               // (2,1)
    {0, 12, 0, 3},                     // (2,2)
    {64, 0, -80, 0, -20, 0, 1},        // (2,3)
    {48, 0, 16, 0, 1},                 // (3,0)
    {-1},                              // (3,1) over z
    {-12, 0, -1},                      // (3,2), negated z^2+12
    {32, 0, 8},                        // (3,3)
};

const std::vector<double> kQuartic = {16, 0, 24, 0, 1};          // z^4+24z^2+16
const std::vector<double> kSextic = {-64, 0, -80, 0, 20, 0, 1};  // z^6+20z^4-80z^2-64

Complex horner(const std::vector<double>& c, Complex z) {
    Complex v(0.0, 0.0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
    return v;
}

// denominator selector per entry: 0 -> z*quartic, 1 -> z, 2 -> quartic,
// 3 -> z*sextic, 4 -> sextic, 5 -> one
const int kDenoms[16] = {0, 1, 2, 3, 0, 1, 2, 3, 2, 5, 2, 4, 0, 1, 2, 0};

}  // namespace

const std::vector<Complex>& multiplication_matrix_poles() {
    static const std::vector<Complex> poles = [] {
        std::vector<Complex> p{Complex(0.0, 0.0)};
        for (const auto& r :
             numkernel::poly_roots(numkernel::ComplexPolynomial(std::vector<Complex>(
                 kQuartic.begin(), kQuartic.end()))))
            p.push_back(r);
        for (const auto& r :
             numkernel::poly_roots(numkernel::ComplexPolynomial(std::vector<Complex>(
                 kSextic.begin(), kSextic.end()))))
            p.push_back(r);
        return p;
    }();
    return poles;
}

Eigen::MatrixXcd multiplication_matrix(Complex z, double margin) {
    for (const auto& p : multiplication_matrix_poles())
        if (std::abs(z - p) < margin)
            throw PoleError("multiplication_matrix: z within margin of a denominator root");
    const Complex quartic = horner(kQuartic, z);
    const Complex sextic = horner(kSextic, z);
    const Complex denom_values[6] = {z * quartic, z, quartic, z * sextic, sextic,
                                     Complex(1.0, 0.0)};
    Eigen::MatrixXcd m(4, 4);
    for (int k = 0; k < 16; ++k)
        m(k / 4, k % 4) = horner(kNumerators[k], z) / denom_values[kDenoms[k]];
    return m;
}

std::uint64_t data_checksum() {
    std::string canon;
    char buf[64];
    for (const auto& t : border_curve_terms()) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.17g;", t.xpow, t.ypow, t.coeff);
        canon += buf;
    }
    for (double c : radius_quartic_coeffs()) {
        std::snprintf(buf, sizeof buf, "%.17g;", c);
        canon += buf;
    }
    for (const auto& row : kNumerators)
        for (double c : row) {
            std::snprintf(buf, sizeof buf, "%.17g;", c);
            canon += buf;
        }
    for (int d : kDenoms) {
        std::snprintf(buf, sizeof buf, "%d;", d);
        canon += buf;
    }
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (unsigned char ch : canon) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace freespectra::curvedata
