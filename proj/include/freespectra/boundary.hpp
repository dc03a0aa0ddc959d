#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "freespectra/freesum.hpp"
#include "freespectra/model.hpp"

namespace freespectra::boundary {

using Complex = std::complex<double>;
using dist::FreeSumModel;

/// One polished point of the outer border: lambda = center + r e^{i theta},
/// with the criterion residual |phi - 1| and the parameter-system residual.
struct BoundarySample {
    double theta = 0.0;
    double r = 0.0;
    Complex lambda;
    double phi_residual = 0.0;
    double solver_residual = 0.0;
};

struct BoundaryCurve {
    Complex center;
    std::vector<BoundarySample> samples;  // ordered by angle
    std::vector<double> gaps;             // angles where no crossing was found
    bool closed = false;                  // true when every ray produced a sample
};

/// Traces the outer spectrum border by radial bisection on phi = 1 along
/// `rays` equally spaced rays from the center, with branch continuation
/// from outside.  Rays that never cross are reported as gaps.  With
/// alt_denominator the variant criterion weights are used (cyclic summands).
BoundaryCurve trace_boundary(const FreeSumModel& models, int rays, Complex center = {0.0, 0.0},
                             double rtol = 1e-10, bool alt_denominator = false,
                             int threads = 1);

/// Traces a single ray; returns the sample, or nothing when the ray never
/// crosses the border.
std::optional<BoundarySample> trace_ray(const FreeSumModel& models, double theta,
                                        Complex center = {0.0, 0.0}, double rtol = 1e-10,
                                        bool alt_denominator = false);

/// Radius along theta where the outside branch first becomes infeasible
/// (solver failure or phi >= 1), located by bisection without the phi = 1
/// polish.  Useful when the border is a solver-failure locus (e.g. an mgf
/// pole for a single summand).  Returns nothing when the ray never crosses.
std::optional<double> ray_crossing_radius(const FreeSumModel& models, double theta,
                                          Complex center = {0.0, 0.0}, double rtol = 1e-9,
                                          bool alt_denominator = false);

enum class IsolatedVerdict { NotInSpectrum, Boundary, Undetermined };

const char* to_string(IsolatedVerdict v);

/// Classifies candidate lambda values by continuing the parameter branch
/// inward along the ray through each candidate: reaching it with phi < 1
/// proves it lies outside the spectrum.
std::vector<IsolatedVerdict> filter_isolated(const FreeSumModel& models,
                                             const std::vector<Complex>& candidates);

/// Result of the multiplication-matrix eigenvalue method at one grid point
/// z: candidate s-coordinates with back-substitution residuals for the
/// four defining equations, and the border indicator x_a * x_b.
struct EigMethodResult {
    Complex z;
    std::vector<Complex> eigenvalues;
    std::vector<double> residuals;
    std::vector<double> boundary_indicator;
    std::vector<bool> admissible;
};

std::vector<EigMethodResult>
eigmethod_run(const std::function<Eigen::MatrixXcd(Complex)>& M,
              const std::vector<Complex>& z_grid);

/// The frozen degree-16 implicit border curve, evaluated at (x, y), and the
/// matching magnitude scale sum |c x^i y^j| for relative-zero tests.
double implicit_curve_eval(double x, double y);
double implicit_curve_scale(double x, double y);

}  // namespace freespectra::boundary
