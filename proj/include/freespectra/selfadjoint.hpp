#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "freespectra/model.hpp"

namespace freespectra::selfadjoint {

using Complex = std::complex<double>;
using dist::OperatorModel;

/// One Stieltjes-inversion sample: -Im G(t + i eps)/pi along a ladder of
/// shrinking eps, plus the linear-in-eps extrapolation to eps = 0.
struct DensitySample {
    double t = 0.0;
    std::vector<double> eps_ladder;
    std::vector<double> values;
    double extrapolated = 0.0;
};

struct AtomReport {
    double location = 0.0;
    double mass = 0.0;
};

/// Default epsilon ladder for density sampling.
extern const std::vector<double> kDensityLadder;

/// Divergence threshold for the blow-up spectrum indicator.
constexpr double kBlowupThreshold = 1e8;

/// Cauchy transform G(zeta) = (1/zeta) f(1/zeta).  Cyclic summands use the
/// closed rational form zeta^{m-1}/(zeta^m - 1), which extends through
/// zeta = 0.  Throws PoleError on the spectrum/singularities.
Complex cauchy(const OperatorModel& model, Complex zeta);

/// Analytic derivative G'(zeta).
Complex cauchy_prime(const OperatorModel& model, Complex zeta);

DensitySample density(const OperatorModel& model, double t,
                      const std::vector<double>& eps_ladder = kDensityLadder);

/// Mass of the atom at t, via lim eps * |G(t + i eps)| along a vertical
/// approach with linear extrapolation.  Returns 0 when there is no atom.
double atom_mass(const OperatorModel& model, double t);

/// ||(zeta - T)^{-1}||_2^2: -(G(zeta) - G(conj zeta))/(zeta - conj zeta)
/// off the real axis, -G'(zeta) on it.
double l2_resolvent_norm_sq(const OperatorModel& model, Complex zeta);

/// Same norm in terms of the inverse Cauchy transform K:
/// -(z - conj z)/(K(z) - conj K(z)), or -1/K'(z) for real z.
double k_resolvent_norm_sq(const std::function<Complex(Complex)>& K,
                           const std::function<Complex(Complex)>& K_prime, Complex z);

/// Grid points t in [lo, hi] where the resolvent L2-norm indicates spectrum:
/// the norm squared just above the axis exceeds kBlowupThreshold, or the
/// evaluation hits a pole.  A heuristic indicator; closure is the caller's.
std::vector<double> blowup_scan(const OperatorModel& model, double lo, double hi, double step);

/// Clusters blow-up flags, refines each cluster to an atom location and
/// measures its mass; clusters with negligible mass are dropped.
std::vector<AtomReport> locate_atoms(const OperatorModel& model, double lo, double hi,
                                     double step);

}  // namespace freespectra::selfadjoint
