#include "freespectra/freesum.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "freespectra/numkernel.hpp"

namespace freespectra::freesum {

using series::PowerSeries;
using series::Rational;
using series::RationalComplex;

const char* to_string(Classification c) {
    switch (c) {
        case Classification::Outside: return "Outside";
        case Classification::Boundary: return "Boundary";
        case Classification::Undetermined: return "Undetermined";
    }
    return "?";
}

namespace {

double original_residual(const FreeSumModel& models, Complex lambda, Complex z,
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

}  // namespace

ParameterState solve_parameters(const FreeSumModel& models, Complex lambda,
                                const std::optional<ParameterState>& seed) {
    const int n = static_cast<int>(models.summands.size());
    if (n == 0) throw InvalidInput("solve_parameters: empty model");
    if (std::abs(lambda) < 1e-300)
        throw DegenerateError("solve_parameters: lambda = 0 is outside the parametrization");

    Eigen::VectorXcd start(n + 1);
    if (seed) {
        if (static_cast<int>(seed->s.size()) != n)
            throw InvalidInput("solve_parameters: seed dimension mismatch");
        start(0) = seed->z;
        for (int i = 0; i < n; ++i) start(i + 1) = seed->s[i];
    } else {
        if (std::abs(lambda) < models.norm_bound() + 1.0 - 1e-9)
            throw InvalidInput(
                "solve_parameters: fresh solve needs |lambda| >= norm bound + 1; seed a "
                "continuation state instead");
        start.setConstant(1.0 / lambda);
    }

    // Row scales frozen at the seed, so the cleared lambda-equation is solved
    // to a tolerance commensurate with its term magnitudes.
    std::vector<double> scale(n + 1, 1.0);
    {
        const Complex z0 = start(0);
        Complex prod(1.0, 0.0);
        for (int i = 0; i < n; ++i) prod *= start(i + 1);
        double sum_partial = 0.0;
        for (int i = 0; i < n; ++i) sum_partial += std::abs(prod / start(i + 1));
        scale[0] = std::abs(lambda * z0 * prod) + std::abs((1.0 - n) * prod) +
                   std::abs(z0) * sum_partial;
        for (int i = 0; i < n; ++i) scale[i + 1] = std::abs(z0) + std::abs(start(i + 1));
        for (auto& v : scale) v = std::max(v, 1e-30);
    }

    auto residual = [&](const Eigen::VectorXcd& w) -> Eigen::VectorXcd {
        Eigen::VectorXcd f(n + 1);
        try {
            const Complex z = w(0);
            Complex prod(1.0, 0.0);
            for (int i = 0; i < n; ++i) prod *= w(i + 1);
            Complex sum_partial(0.0, 0.0);
            for (int i = 0; i < n; ++i) {
                Complex partial(1.0, 0.0);
                for (int j = 0; j < n; ++j)
                    if (j != i) partial *= w(j + 1);
                sum_partial += partial;
            }
            f(0) = (lambda * z * prod - (1.0 - n) * prod - z * sum_partial) / scale[0];
            for (int i = 0; i < n; ++i) {
                const Complex si = w(i + 1);
                f(i + 1) = (si * models.summands[i].mgf(si) - z) / scale[i + 1];
            }
        } catch (const Error&) {
            f.setConstant(std::numeric_limits<double>::quiet_NaN());
        }
        return f;
    };
    auto jacobian = [&](const Eigen::VectorXcd& w) -> Eigen::MatrixXcd {
        Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(n + 1, n + 1);
        const Complex z = w(0);
        std::vector<Complex> partial(n);  // prod over j != i
        Complex prod(1.0, 0.0);
        for (int i = 0; i < n; ++i) {
            partial[i] = Complex(1.0, 0.0);
            for (int jj = 0; jj < n; ++jj)
                if (jj != i) partial[i] *= w(jj + 1);
            prod *= w(i + 1);
        }
        Complex sum_partial(0.0, 0.0);
        for (int i = 0; i < n; ++i) sum_partial += partial[i];
        j(0, 0) = (lambda * prod - sum_partial) / scale[0];
        for (int k = 0; k < n; ++k) {
            Complex dsum(0.0, 0.0);  // d/ds_k of sum_i partial_i
            for (int i = 0; i < n; ++i) {
                if (i == k) continue;
                Complex p(1.0, 0.0);
                for (int jj = 0; jj < n; ++jj)
                    if (jj != i && jj != k) p *= w(jj + 1);
                dsum += p;
            }
            j(0, k + 1) =
                (lambda * z * partial[k] - (1.0 - n) * partial[k] - z * dsum) / scale[0];
        }
        for (int i = 0; i < n; ++i) {
            const Complex si = w(i + 1);
            j(i + 1, 0) = Complex(-1.0, 0.0) / scale[i + 1];
            j(i + 1, i + 1) =
                (models.summands[i].mgf(si) + si * models.summands[i].mgf_prime(si)) /
                scale[i + 1];
        }
        return j;
    };

    numkernel::NewtonProblem problem;
    problem.dimension = n + 1;
    problem.residual = residual;
    problem.jacobian = jacobian;
    problem.tolerance = 1e-13;
    problem.max_iterations = 60;
    const auto result = numkernel::newton_solve(problem, start);

    ParameterState state;
    state.lambda = lambda;
    state.z = result.solution(0);
    state.s.resize(n);
    for (int i = 0; i < n; ++i) state.s[i] = result.solution(i + 1);
    if (std::abs(state.z) < 1e-12)
        throw DegenerateError("solve_parameters: z collapsed to 0");
    for (const auto& si : state.s)
        if (std::abs(si) < 1e-12)
            throw DegenerateError("solve_parameters: some s_i collapsed to 0");
    for (int i = 0; i < n; ++i)
        if (std::abs(models.summands[i].mgf(state.s[i])) < 1e-10)
            throw DegenerateError("solve_parameters: f_i(s_i) vanished");
    state.residual = original_residual(models, lambda, state.z, state.s);
    if (!(state.residual <= 1e-11))
        throw NoConvergence("solve_parameters: residual " + std::to_string(state.residual));
    return state;
}

double phi_weighted(const FreeSumModel& models, const std::vector<Complex>& s,
                    bool alt_denominator) {
    const int n = static_cast<int>(models.summands.size());
    if (static_cast<int>(s.size()) != n)
        throw InvalidInput("phi_weighted: one s per summand required");
    double phi = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto& model = models.summands[i];
        const Complex si = s[i];
        if (alt_denominator && model.kind() == OperatorModel::Kind::Cyclic) {
            // variant weight with |1 - s^m|^2 in place of 1
            const double a2 = std::norm(si);
            double num = 0.0, p = 1.0;
            for (int jj = 1; jj < model.cyclic_order(); ++jj) {
                p *= a2;
                num += p;
            }
            Complex sm(1.0, 0.0);
            for (int jj = 0; jj < model.cyclic_order(); ++jj) sm *= si;
            phi += num / (std::norm(Complex(1.0, 0.0) - sm) + num);
        } else {
            const double xi = model.x_value(si);
            phi += xi / (1.0 + xi);
        }
    }
    return phi;
}

CriterionReport criterion(const FreeSumModel& models, const ParameterState& state,
                          bool alt_denominator) {
    if (!(state.residual <= 1e-9))
        throw InvalidInput("criterion: state residual exceeds 1e-9");
    const int n = static_cast<int>(models.summands.size());
    CriterionReport report;
    report.state = state;
    report.x.resize(n);
    for (int i = 0; i < n; ++i) report.x[i] = models.summands[i].x_value(state.s[i]);
    report.phi = phi_weighted(models, state.s, alt_denominator);
    if (std::abs(report.phi - 1.0) <= kBoundaryBand)
        report.classification = Classification::Boundary;
    else if (report.phi < 1.0)
        report.classification = Classification::Outside;
    else
        report.classification = Classification::Undetermined;
    report.l2_norm_sq = report.phi < 1.0 ? std::norm(state.z) / (1.0 - report.phi)
                                         : std::numeric_limits<double>::infinity();
    return report;
}

AlternatingSum scalar_alternating_sum(const std::vector<double>& x, int truncation_order) {
    double phi = 0.0;
    for (double xi : x) {
        if (xi < 0.0) throw InvalidInput("scalar_alternating_sum: negative x");
        phi += xi / (1.0 + xi);
    }
    if (phi >= 1.0)
        throw DivergenceError("scalar_alternating_sum: sum x/(1+x) >= 1", phi);
    const int n = static_cast<int>(x.size());
    // a_k(i) = x_i * sum_{j != i} a_{k-1}(j)
    std::vector<double> a(x);
    double truncated = 1.0;
    double total = 0.0;
    for (double v : a) total += v;
    truncated += total;
    for (int k = 2; k <= truncation_order; ++k) {
        std::vector<double> next(n);
        double next_total = 0.0;
        for (int i = 0; i < n; ++i) {
            next[i] = x[i] * (total - a[i]);
            next_total += next[i];
        }
        a = std::move(next);
        total = next_total;
        truncated += total;
        if (total == 0.0) break;
    }
    return AlternatingSum{truncated, 1.0 / (1.0 - phi)};
}

SymmetricCriterion symmetric_criterion(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    double sum_form = 0.0;
    for (double xi : x) {
        if (xi < 0.0) throw InvalidInput("symmetric_criterion: negative x");
        sum_form += xi / (1.0 + xi);
    }
    // elementary symmetric functions from prod (1 + t x_i)
    std::vector<double> e(n + 1, 0.0);
    e[0] = 1.0;
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k >= 1; --k) e[k] += x[i] * e[k - 1];
    double esym = 0.0;
    for (int k = 2; k <= n; ++k) esym += (k - 1) * e[k];
    return SymmetricCriterion{sum_form, esym, sum_form < 1.0, esym < 1.0};
}

namespace {

// series g(u) = sum m_k u^{k+1}; h = g^{-1}; transfer series r = w/h(w) - 1
PowerSeries additive_transform(const std::vector<RationalComplex>& moments, std::size_t prec) {
    PowerSeries g(prec + 1);
    for (std::size_t k = 0; k + 1 <= prec && k < moments.size(); ++k) g[k + 1] = moments[k];
    const PowerSeries h = series::compositional_inverse(g, prec);
    PowerSeries h_over_w(prec + 1);
    for (std::size_t k = 0; k < prec; ++k) h_over_w[k] = h[k + 1];
    PowerSeries r = series::reciprocal(h_over_w, prec);
    r[0] -= RationalComplex(1);
    return r;
}

}  // namespace

std::vector<RationalComplex>
free_convolution_moments(const std::vector<std::vector<RationalComplex>>& moment_sequences,
                         int order) {
    if (order < 0) throw InvalidInput("free_convolution_moments: negative order");
    if (order > kMomentOrderCap)
        throw CapacityError("free_convolution_moments: order exceeds cap " +
                            std::to_string(kMomentOrderCap));
    if (moment_sequences.empty())
        throw InvalidInput("free_convolution_moments: no summands");
    for (const auto& seq : moment_sequences)
        if (seq.empty() || seq[0] != RationalComplex(1))
            throw InvalidInput("free_convolution_moments: each sequence must start with m0 = 1");

    const std::size_t prec = static_cast<std::size_t>(order) + 1;
    PowerSeries r_total(prec + 1);
    for (const auto& seq : moment_sequences) {
        const PowerSeries r = additive_transform(seq, prec);
        for (std::size_t k = 0; k <= prec; ++k) r_total[k] += r[k];
    }
    PowerSeries one_plus_r = r_total;
    one_plus_r[0] += RationalComplex(1);
    const PowerSeries h_over_w = series::reciprocal(one_plus_r, prec);
    PowerSeries h(prec + 1);
    for (std::size_t k = 0; k < prec; ++k) h[k + 1] = h_over_w[k];
    const PowerSeries g = series::compositional_inverse(h, prec);
    std::vector<RationalComplex> moments(order + 1);
    for (int k = 0; k <= order; ++k) moments[k] = g[k + 1];
    return moments;
}

std::vector<RationalComplex> model_moments(const OperatorModel& model, int order) {
    if (order < 0) throw InvalidInput("model_moments: negative order");
    std::vector<RationalComplex> m(order + 1);
    switch (model.kind()) {
        case OperatorModel::Kind::Cyclic:
            for (int k = 0; k <= order; ++k)
                m[k] = RationalComplex(k % model.cyclic_order() == 0 ? 1 : 0);
            return m;
        case OperatorModel::Kind::ArcsineShift: {
            // central binomial coefficients for even orders
            Rational binom(1);
            for (int k = 0; k <= order; ++k) {
                if (k % 2 == 0) {
                    if (k > 0) {
                        // C(k, k/2) from C(k-2, k/2-1): * k*(k-1) / (k/2)^2
                        binom = binom * k * (k - 1) / (Rational(k / 2) * (k / 2));
                    }
                    m[k] = RationalComplex(binom);
                }
            }
            return m;
        }
        case OperatorModel::Kind::Rotated: {
            const auto base = model_moments(model.base(), order);
            const RationalComplex omega =
                RationalComplex::from_double(model.phase().real(), model.phase().imag());
            RationalComplex pw(1);
            for (int k = 0; k <= order; ++k) {
                m[k] = pw * base[k];
                pw = pw * omega;
            }
            return m;
        }
        case OperatorModel::Kind::MomentSeries: {
            if (order >= static_cast<int>(model.moments().size()))
                throw CapacityError("model_moments: order beyond the stored moment series");
            for (int k = 0; k <= order; ++k)
                m[k] = RationalComplex::from_double(model.moments()[k].real(),
                                                    model.moments()[k].imag());
            return m;
        }
    }
    throw InvalidInput("model_moments: unknown model kind");
}

}  // namespace freespectra::freesum
