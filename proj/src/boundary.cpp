#include "freespectra/boundary.hpp"

#include <cmath>
#include <future>
#include <limits>

#include "freespectra/curve_data.hpp"
#include "freespectra/numkernel.hpp"

namespace freespectra::boundary {

using freesum::ParameterState;

namespace {

struct OutsidePoint {
    double r;
    ParameterState state;
    double phi;
};

// Attempts the branch solve at radius r; succeeds only for feasible outside
// points (solver converged and phi < 1).
std::optional<OutsidePoint> try_outside(const FreeSumModel& models, Complex center,
                                        double theta, double r,
                                        const std::optional<ParameterState>& seed,
                                        bool alt) {
    const Complex lambda = center + r * std::polar(1.0, theta);
    try {
        ParameterState state = freesum::solve_parameters(models, lambda, seed);
        const double phi = freesum::phi_weighted(models, state.s, alt);
        if (!std::isfinite(phi) || phi >= 1.0) return std::nullopt;
        return OutsidePoint{r, std::move(state), phi};
    } catch (const Error&) {
        return std::nullopt;
    }
}

// Marches inward from outside the norm bound and bisects the first radius
// where the outside branch becomes infeasible.  Returns the bracketing
// outside point (hi side) or nothing when the ray never crosses.
std::optional<OutsidePoint> bracket_crossing(const FreeSumModel& models, Complex center,
                                             double theta, double rtol, bool alt,
                                             double* crossing_lo = nullptr) {
    const double r_out = models.norm_bound() + 1.0 + std::abs(center);
    const double step = 0.02 * r_out;
    auto outside = try_outside(models, center, theta, r_out, std::nullopt, alt);
    if (!outside) return std::nullopt;  // cannot even start outside
    double lo = -1.0;
    for (double r = r_out - step;; r -= step) {
        if (r < rtol) return std::nullopt;  // reached the center while feasible
        auto next = try_outside(models, center, theta, r, outside->state, alt);
        if (!next) {
            lo = r;
            break;
        }
        outside = std::move(next);
    }
    while (outside->r - lo > std::max(rtol, 1e-13)) {
        const double mid = 0.5 * (lo + outside->r);
        auto p = try_outside(models, center, theta, mid, outside->state, alt);
        if (p)
            outside = std::move(p);
        else
            lo = mid;
    }
    if (crossing_lo) *crossing_lo = lo;
    return outside;
}

double state_residual(const FreeSumModel& models, Complex lambda, Complex z,
                      const std::vector<Complex>& s) {
    const int n = static_cast<int>(s.size());
    Complex acc = Complex(1.0 - n, 0.0) / z;
    double res = 0.0;
    for (int i = 0; i < n; ++i) {
        acc += 1.0 / s[i];
        res = std::max(res, std::abs(s[i] * models.summands[i].mgf(s[i]) - z));
    }
    return std::max(res, std::abs(lambda - acc));
}

// Polishes an outside bracketing point onto phi = 1 with the radius freed:
// unknowns (r, z, s_i) as reals, equations = parameter system + (phi - 1).
std::optional<BoundarySample> polish_sample(const FreeSumModel& models, Complex center,
                                            double theta, const OutsidePoint& outside,
                                            bool alt) {
    const int n = static_cast<int>(models.summands.size());
    const int dim = 2 * n + 3;
    const Complex dir = std::polar(1.0, theta);
    auto residual = [&](const Eigen::VectorXd& u) -> Eigen::VectorXd {
        Eigen::VectorXd f(dim);
        try {
            const Complex lambda = center + u(0) * dir;
            const Complex z(u(1), u(2));
            std::vector<Complex> s(n);
            for (int i = 0; i < n; ++i) s[i] = Complex(u(3 + 2 * i), u(4 + 2 * i));
            Complex acc = lambda - Complex(1.0 - n, 0.0) / z;
            for (int i = 0; i < n; ++i) acc -= 1.0 / s[i];
            f(0) = acc.real();
            f(1) = acc.imag();
            for (int i = 0; i < n; ++i) {
                const Complex e = s[i] * models.summands[i].mgf(s[i]) - z;
                f(2 + 2 * i) = e.real();
                f(3 + 2 * i) = e.imag();
            }
            f(dim - 1) = freesum::phi_weighted(models, s, alt) - 1.0;
        } catch (const Error&) {
            f.setConstant(std::numeric_limits<double>::quiet_NaN());
        }
        return f;
    };
    Eigen::VectorXd start(dim);
    start(0) = outside.r;
    start(1) = outside.state.z.real();
    start(2) = outside.state.z.imag();
    for (int i = 0; i < n; ++i) {
        start(3 + 2 * i) = outside.state.s[i].real();
        start(4 + 2 * i) = outside.state.s[i].imag();
    }
    numkernel::RealNewtonProblem problem;
    problem.dimension = dim;
    problem.residual = residual;
    problem.tolerance = 1e-11;
    problem.max_iterations = 100;
    problem.fd_step = 1e-7;
    try {
        const auto result = numkernel::newton_solve_real(problem, start);
        BoundarySample sample;
        sample.theta = theta;
        sample.r = result.solution(0);
        sample.lambda = center + sample.r * dir;
        const Complex z(result.solution(1), result.solution(2));
        std::vector<Complex> s(n);
        for (int i = 0; i < n; ++i)
            s[i] = Complex(result.solution(3 + 2 * i), result.solution(4 + 2 * i));
        sample.phi_residual = std::abs(freesum::phi_weighted(models, s, alt) - 1.0);
        sample.solver_residual = state_residual(models, sample.lambda, z, s);
        if (sample.phi_residual > 1e-8 || sample.solver_residual > 1e-9) return std::nullopt;
        return sample;
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace

std::optional<BoundarySample> trace_ray(const FreeSumModel& models, double theta,
                                        Complex center, double rtol, bool alt_denominator) {
    const auto outside = bracket_crossing(models, center, theta, rtol, alt_denominator);
    if (!outside) return std::nullopt;
    return polish_sample(models, center, theta, *outside, alt_denominator);
}

std::optional<double> ray_crossing_radius(const FreeSumModel& models, double theta,
                                          Complex center, double rtol,
                                          bool alt_denominator) {
    double lo = 0.0;
    const auto outside =
        bracket_crossing(models, center, theta, rtol, alt_denominator, &lo);
    if (!outside) return std::nullopt;
    return 0.5 * (lo + outside->r);
}

BoundaryCurve trace_boundary(const FreeSumModel& models, int rays, Complex center,
                             double rtol, bool alt_denominator, int threads) {
    if (rays < 16) throw InvalidInput("trace_boundary: need at least 16 rays");
    BoundaryCurve curve;
    curve.center = center;
    std::vector<std::optional<BoundarySample>> results(rays);
    auto run_range = [&](int begin, int end) {
        for (int k = begin; k < end; ++k) {
            const double theta = 2.0 * M_PI * k / rays;
            results[k] = trace_ray(models, theta, center, rtol, alt_denominator);
        }
    };
    if (threads <= 1) {
        run_range(0, rays);
    } else {
        std::vector<std::future<void>> tasks;
        const int chunk = (rays + threads - 1) / threads;
        for (int begin = 0; begin < rays; begin += chunk)
            tasks.push_back(std::async(std::launch::async, run_range, begin,
                                       std::min(begin + chunk, rays)));
        for (auto& t : tasks) t.get();
    }
    for (int k = 0; k < rays; ++k) {
        if (results[k])
            curve.samples.push_back(*results[k]);
        else
            curve.gaps.push_back(2.0 * M_PI * k / rays);
    }
    curve.closed = curve.gaps.empty() && static_cast<int>(curve.samples.size()) == rays;
    return curve;
}

const char* to_string(IsolatedVerdict v) {
    switch (v) {
        case IsolatedVerdict::NotInSpectrum: return "NotInSpectrum";
        case IsolatedVerdict::Boundary: return "Boundary";
        case IsolatedVerdict::Undetermined: return "Undetermined";
    }
    return "?";
}

std::vector<IsolatedVerdict> filter_isolated(const FreeSumModel& models,
                                             const std::vector<Complex>& candidates) {
    std::vector<IsolatedVerdict> verdicts;
    for (const Complex& cand : candidates) {
        const double target = std::abs(cand);
        if (target < 1e-12) {
            verdicts.push_back(IsolatedVerdict::Undetermined);
            continue;
        }
        const double theta = std::arg(cand);
        const double r_out = models.norm_bound() + 1.0;
        const double step = 0.005 * r_out;
        auto outside = try_outside(models, {0.0, 0.0}, theta, r_out, std::nullopt, false);
        IsolatedVerdict verdict = IsolatedVerdict::Undetermined;
        while (outside) {
            const double next_r = std::max(target, outside->r - step);
            auto next = try_outside(models, {0.0, 0.0}, theta, next_r, outside->state, false);
            if (!next) break;
            outside = std::move(next);
            if (outside->r <= target) {
                if (outside->phi < 1.0 - freesum::kBoundaryBand)
                    verdict = IsolatedVerdict::NotInSpectrum;
                else if (std::abs(outside->phi - 1.0) <= 1e-6)
                    verdict = IsolatedVerdict::Boundary;
                break;
            }
        }
        verdicts.push_back(verdict);
    }
    return verdicts;
}

namespace {

// squared-L2-over-|f|^2 excess x for the shifted Haar summand, from the
// already-recovered mgf value f at s (f' = 4 s f^3 on this branch).
double arcsine_x(Complex s, Complex f) {
    double res2;
    if (std::abs(s.imag()) < 1e-8) {
        res2 = (f + s * (4.0 * s * f * f * f)).real();
    } else {
        const Complex sf = s * f;
        res2 = ((std::conj(sf) - sf) / (std::conj(s) - s)).real();
    }
    return std::max(res2 / std::norm(f) - 1.0, 0.0);
}

}  // namespace

std::vector<EigMethodResult>
eigmethod_run(const std::function<Eigen::MatrixXcd(Complex)>& M,
              const std::vector<Complex>& z_grid) {
    std::vector<EigMethodResult> out;
    out.reserve(z_grid.size());
    for (const Complex& z : z_grid) {
        const Eigen::MatrixXcd m = M(z);
        // left eigenvectors carry the evaluation functionals on the quotient
        // basis ([g],[f],[t],[1]); normalize by the [1] component.
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m.transpose());
        if (solver.info() != Eigen::Success)
            throw NumericFailure("eigmethod_run: eigensolver failed");
        EigMethodResult result;
        result.z = z;
        for (int k = 0; k < m.rows(); ++k) {
            const Complex s = solver.eigenvalues()(k);
            result.eigenvalues.push_back(s);
            const Eigen::VectorXcd w = solver.eigenvectors().col(k);
            if (std::abs(w(3)) < 1e-12) {
                result.residuals.push_back(std::numeric_limits<double>::infinity());
                result.boundary_indicator.push_back(
                    std::numeric_limits<double>::quiet_NaN());
                result.admissible.push_back(false);
                continue;
            }
            const Complex g = w(0) / w(3);
            const Complex f = w(1) / w(3);
            const Complex t = w(2) / w(3);
            const Complex lambda = z;
            const double res = std::max(
                {std::abs(lambda * s * f - f - g + 1.0), std::abs(s * f - t * g),
                 std::abs(f * f * (1.0 - 4.0 * s * s) - 1.0),
                 std::abs(g * g * (1.0 + 4.0 * t * t) - 1.0)});
            result.residuals.push_back(res);
            // b = i(v + v*): its resolvent at t matches the shifted Haar
            // resolvent at t' = i t with the same mgf value g.
            const double xa = arcsine_x(s, f);
            const double xb = arcsine_x(Complex(0.0, 1.0) * t, g);
            result.boundary_indicator.push_back(xa * xb);
            result.admissible.push_back(res <= 1e-8);
        }
        out.push_back(std::move(result));
    }
    return out;
}

double implicit_curve_eval(double x, double y) {
    double v = 0.0;
    for (const auto& term : curvedata::border_curve_terms())
        v += term.coeff * std::pow(x, term.xpow) * std::pow(y, term.ypow);
    return v;
}

double implicit_curve_scale(double x, double y) {
    double v = 0.0;
    for (const auto& term : curvedata::border_curve_terms())
        v += std::abs(term.coeff * std::pow(x, term.xpow) * std::pow(y, term.ypow));
    return v;
}

}  // namespace freespectra::boundary
