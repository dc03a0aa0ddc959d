#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "freespectra/errors.hpp"

namespace freespectra::dist {

using Complex = std::complex<double>;

/// A catalogued free summand, described by its moment generating function
/// f(s) = phi((1 - s a)^{-1}) and the derived resolvent norms.
///
/// Kinds:
///   Cyclic(m)     - unitary of order m, f(s) = 1/(1-s^m), operator norm 1.
///   ArcsineShift  - u + u* for a Haar unitary u, f(s) = 1/sqrt(1-4s^2),
///                   branch fixed by f(0) = 1, cut on the real rays |s| >= 1/2.
///   Rotated       - omega * base for |omega| = 1, f(s) = f_base(omega s).
///   MomentSeries  - truncated series f(s) = sum m_k s^k, valid for
///                   |s| <= 0.5 / norm_bound.
class OperatorModel {
  public:
    enum class Kind { Cyclic, ArcsineShift, Rotated, MomentSeries };

    static OperatorModel cyclic(int m);
    static OperatorModel arcsine();
    static OperatorModel rotated(OperatorModel base, Complex phase);
    static OperatorModel moment_series(std::vector<Complex> moments, double norm_bound);

    Kind kind() const { return kind_; }
    int cyclic_order() const { return m_; }
    Complex phase() const { return phase_; }
    const OperatorModel& base() const { return *base_; }
    const std::vector<Complex>& moments() const { return moments_; }
    double norm_bound() const { return norm_bound_; }

    /// True when the modelled operator is self-adjoint (real spectrum).
    bool self_adjoint() const;

    Complex mgf(Complex s) const;
    Complex mgf_prime(Complex s) const;

    /// ||(1 - s a)^{-1}||_2^2 in the trace inner product.
    double resolvent_l2_sq(Complex s) const;

    /// Squared L2-norm of the centered resolvent part, normalized:
    /// x = resolvent_l2_sq(s) / |f(s)|^2 - 1.  Always >= 0.
    double x_value(Complex s) const;

    std::string to_string() const;

  private:
    OperatorModel() = default;

    Kind kind_ = Kind::Cyclic;
    int m_ = 2;                              // Cyclic order
    Complex phase_{1.0, 0.0};                // Rotated phase
    std::shared_ptr<const OperatorModel> base_;  // Rotated base
    std::vector<Complex> moments_;           // MomentSeries coefficients
    double norm_bound_ = 1.0;
};

/// A free sum of catalogued summands; the norm bound is the sum of the
/// summand bounds.
struct FreeSumModel {
    std::vector<OperatorModel> summands;

    double norm_bound() const;
    std::string to_string() const;
};

/// Parses the model grammar:
///   cyclic:<m> | arcsine | rot:<re>,<im>:(<model>) | series:[m1,m2,...]:<bound>
/// with summands joined by '+', e.g. "cyclic:2+cyclic:3".
FreeSumModel parse_model(const std::string& text);

}  // namespace freespectra::dist
