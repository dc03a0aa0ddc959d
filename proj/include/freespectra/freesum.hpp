#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "freespectra/model.hpp"
#include "freespectra/series.hpp"

namespace freespectra::freesum {

using Complex = std::complex<double>;
using dist::FreeSumModel;
using dist::OperatorModel;

/// A solution of the subordination-style parameter system
///   s_i f_i(s_i) = z   (one per summand),
///   lambda = 1/z + sum_i (1/s_i - 1/z),
/// tracked along continuation paths.
struct ParameterState {
    Complex lambda;
    Complex z;
    std::vector<Complex> s;
    double residual = 0.0;  // infinity norm over the defining equations
};

enum class Classification { Outside, Boundary, Undetermined };

const char* to_string(Classification c);

struct CriterionReport {
    ParameterState state;
    std::vector<double> x;  // x_i = ||S_i||_2^2
    double phi = 0.0;       // sum x_i / (1 + x_i)
    Classification classification = Classification::Undetermined;
    double l2_norm_sq = 0.0;  // |z|^2 / (1 - phi); +inf when phi >= 1
};

/// Tolerance band on |phi - 1| inside which a state counts as Boundary.
constexpr double kBoundaryBand = 1e-8;

/// Solves the parameter system at lambda.  Without a seed the fresh solve
/// starts from z = s_i = 1/lambda and requires |lambda| >= norm_bound + 1;
/// with a seed the previous state is continued.
ParameterState solve_parameters(const FreeSumModel& models, Complex lambda,
                                const std::optional<ParameterState>& seed = std::nullopt);

/// Criterion sum over summand weights at the given s-coordinates; standard
/// weight x/(1+x), or the variant denominator when alt_denominator is set.
double phi_weighted(const FreeSumModel& models, const std::vector<Complex>& s,
                    bool alt_denominator = false);

/// Evaluates the L2 criterion at a solved state.  With alt_denominator the
/// per-summand weight x/(1+x) is replaced by the variant that uses
/// |1 - s^m|^2 in place of 1 in the denominator (cyclic summands only).
CriterionReport criterion(const FreeSumModel& models, const ParameterState& state,
                          bool alt_denominator = false);

/// Truncated alternating-product sum 1 + sum over alternating index words of
/// x_{i1}...x_{in}, n <= N (transfer recursion), plus its closed form
/// (1 - sum x_i/(1+x_i))^{-1}.
struct AlternatingSum {
    double truncated;
    double closed;
};
AlternatingSum scalar_alternating_sum(const std::vector<double>& x, int truncation_order);

/// Both faces of the criterion: sum x_i/(1+x_i) and sum (k-1) E_k, with the
/// respective "< 1" booleans.
struct SymmetricCriterion {
    double sum_form;
    double esym_form;
    bool sum_below_one;
    bool esym_below_one;
};
SymmetricCriterion symmetric_criterion(const std::vector<double>& x);

constexpr int kMomentOrderCap = 64;

/// Moments of the free sum of distributions given by their moment sequences
/// (each starting with m0 = 1), through order n, in exact rational-complex
/// arithmetic.  Returns m_0..m_n.
std::vector<series::RationalComplex>
free_convolution_moments(const std::vector<std::vector<series::RationalComplex>>& moment_sequences,
                         int order);

/// Exact moment sequence m_0..m_n of a catalogued summand (cyclic, arcsine,
/// rotations and series thereof).
std::vector<series::RationalComplex> model_moments(const OperatorModel& model, int order);

}  // namespace freespectra::freesum
