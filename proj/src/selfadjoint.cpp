#include "freespectra/selfadjoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace freespectra::selfadjoint {

const std::vector<double> kDensityLadder = {1e-2, 1e-3, 1e-4};

namespace {

constexpr double kScanEps = 1e-9;  // offset above the axis for the blow-up scan

Complex cyclic_pow(Complex zeta, int m) {
    Complex p(1.0, 0.0);
    for (int k = 0; k < m; ++k) p *= zeta;
    return p;
}

}  // namespace

Complex cauchy(const OperatorModel& model, Complex zeta) {
    if (model.kind() == OperatorModel::Kind::Cyclic) {
        const int m = model.cyclic_order();
        const Complex zm = cyclic_pow(zeta, m);
        if (std::abs(zm - 1.0) < 1e-12)
            throw PoleError("cauchy: zeta is a spectral point of the cyclic model");
        return cyclic_pow(zeta, m - 1) / (zm - 1.0);
    }
    if (std::abs(zeta) < 1e-13)
        throw PoleError("cauchy: zeta = 0 not in the resolvent set for this model");
    const Complex s = 1.0 / zeta;
    return s * model.mgf(s);
}

Complex cauchy_prime(const OperatorModel& model, Complex zeta) {
    if (model.kind() == OperatorModel::Kind::Cyclic) {
        const int m = model.cyclic_order();
        const Complex zm = cyclic_pow(zeta, m);
        if (std::abs(zm - 1.0) < 1e-12)
            throw PoleError("cauchy_prime: zeta is a spectral point of the cyclic model");
        const Complex num = Complex(m - 1, 0.0) * cyclic_pow(zeta, m - 2) * (zm - 1.0) -
                            Complex(m, 0.0) * cyclic_pow(zeta, 2 * m - 2);
        return num / ((zm - 1.0) * (zm - 1.0));
    }
    if (std::abs(zeta) < 1e-13)
        throw PoleError("cauchy_prime: zeta = 0 not in the resolvent set for this model");
    const Complex s = 1.0 / zeta;
    return -s * s * (model.mgf(s) + s * model.mgf_prime(s));
}

DensitySample density(const OperatorModel& model, double t,
                      const std::vector<double>& eps_ladder) {
    if (eps_ladder.size() < 2) throw InvalidInput("density: ladder needs >= 2 levels");
    for (std::size_t k = 0; k < eps_ladder.size(); ++k)
        if (eps_ladder[k] <= 0.0 || (k > 0 && eps_ladder[k] >= eps_ladder[k - 1]))
            throw InvalidInput("density: ladder must be positive and strictly decreasing");
    DensitySample out;
    out.t = t;
    out.eps_ladder = eps_ladder;
    for (double eps : eps_ladder)
        out.values.push_back(-cauchy(model, Complex(t, eps)).imag() / M_PI);
    const std::size_t n = eps_ladder.size();
    const double e1 = eps_ladder[n - 2], e2 = eps_ladder[n - 1];
    const double v1 = out.values[n - 2], v2 = out.values[n - 1];
    double ext = (v2 * e1 - v1 * e2) / (e1 - e2);  // linear in eps through the last two
    if (ext < 1e-9) ext = 0.0;
    out.extrapolated = ext;
    return out;
}

double atom_mass(const OperatorModel& model, double t) {
    const double e1 = 1e-4, e2 = 1e-5;
    const double m1 = e1 * std::abs(cauchy(model, Complex(t, e1)));
    const double m2 = e2 * std::abs(cauchy(model, Complex(t, e2)));
    // a genuine atom has eps |G| -> mass + O(eps); decaying values indicate a
    // continuous singularity (e.g. an inverse-square-root band edge) instead
    if (m2 < 0.9 * m1) return 0.0;
    double mass = (m2 * e1 - m1 * e2) / (e1 - e2);
    if (mass < 1e-7) mass = 0.0;
    return std::clamp(mass, 0.0, 1.0);
}

double l2_resolvent_norm_sq(const OperatorModel& model, Complex zeta) {
    if (std::abs(zeta.imag()) < 1e-8) return (-cauchy_prime(model, zeta.real())).real();
    const Complex g = cauchy(model, zeta);
    const Complex gbar = cauchy(model, std::conj(zeta));
    return (-(g - gbar) / (zeta - std::conj(zeta))).real();
}

double k_resolvent_norm_sq(const std::function<Complex(Complex)>& K,
                           const std::function<Complex(Complex)>& K_prime, Complex z) {
    if (std::abs(z.imag()) < 1e-10) {
        const Complex kp = K_prime(z);
        if (std::abs(kp) < 1e-300) throw DegenerateError("k_resolvent_norm_sq: K'(z) = 0");
        return (-1.0 / kp).real();
    }
    const Complex kz = K(z);
    const Complex denom = kz - std::conj(kz);
    if (std::abs(denom) < 1e-300)
        throw DegenerateError("k_resolvent_norm_sq: K(z) real off the real axis");
    return (-(z - std::conj(z)) / denom).real();
}

std::vector<double> blowup_scan(const OperatorModel& model, double lo, double hi, double step) {
    if (step <= 0.0) throw InvalidInput("blowup_scan: step must be positive");
    std::vector<double> flagged;
    for (double t = lo; t <= hi + 0.5 * step; t += step) {
        bool flag;
        try {
            const double n2 = l2_resolvent_norm_sq(model, Complex(t, kScanEps));
            flag = !std::isfinite(n2) || n2 > kBlowupThreshold;
        } catch (const Error&) {
            flag = true;
        }
        if (flag) flagged.push_back(t);
    }
    return flagged;
}

std::vector<AtomReport> locate_atoms(const OperatorModel& model, double lo, double hi,
                                     double step) {
    const auto flags = blowup_scan(model, lo, hi, step);
    std::vector<AtomReport> atoms;
    std::size_t k = 0;
    while (k < flags.size()) {
        std::size_t end = k;
        while (end + 1 < flags.size() && flags[end + 1] - flags[end] <= 1.5 * step) ++end;
        double a = flags[k] - step, b = flags[end] + step;
        // golden-section maximization of eps*|G| pins the atom location
        const double eps = 1e-6;
        auto q = [&](double t) {
            try {
                return eps * std::abs(cauchy(model, Complex(t, eps)));
            } catch (const Error&) {
                return std::numeric_limits<double>::infinity();
            }
        };
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double q1 = q(x1), q2 = q(x2);
        for (int it = 0; it < 120 && b - a > 1e-12; ++it) {
            if (q1 < q2) {
                a = x1;
                x1 = x2;
                q1 = q2;
                x2 = a + gr * (b - a);
                q2 = q(x2);
            } else {
                b = x2;
                x2 = x1;
                q2 = q1;
                x1 = b - gr * (b - a);
                q1 = q(x1);
            }
        }
        const double loc = 0.5 * (a + b);
        const double mass = atom_mass(model, loc);
        if (mass > 1e-6) atoms.push_back({loc, mass});
        k = end + 1;
    }
    return atoms;
}

}  // namespace freespectra::selfadjoint
