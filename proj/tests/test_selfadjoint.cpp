#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "freespectra/selfadjoint.hpp"

using namespace freespectra;
using dist::OperatorModel;
using selfadjoint::Complex;

TEST_CASE("cauchy transform closed values") {
    const auto c2 = OperatorModel::cyclic(2);
    CHECK(std::abs(selfadjoint::cauchy(c2, {2.0, 0.0}) - Complex(2.0 / 3.0, 0.0)) < 1e-14);
    // the rational form extends through zeta = 0
    CHECK(std::abs(selfadjoint::cauchy(c2, {0.0, 0.0})) < 1e-15);
    CHECK_THROWS_AS(selfadjoint::cauchy(c2, {1.0, 0.0}), PoleError);

    const auto arc = OperatorModel::arcsine();
    CHECK(std::abs(selfadjoint::cauchy(arc, {3.0, 0.0}) - Complex(1.0 / std::sqrt(5.0), 0.0)) <
          1e-13);
    CHECK_THROWS_AS(selfadjoint::cauchy(arc, {1.5, 0.0}), PoleError);

    // zeta G(zeta) -> 1 at infinity
    for (const auto& model : {c2, arc}) {
        const Complex zeta(1e6, 3.0);
        CHECK(std::abs(zeta * selfadjoint::cauchy(model, zeta) - Complex(1.0, 0.0)) < 1e-10);
    }
}

TEST_CASE("cauchy_prime matches finite differences") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.3, 2.0);
    for (const auto& model : {OperatorModel::cyclic(2), OperatorModel::cyclic(4),
                              OperatorModel::arcsine()}) {
        for (int trial = 0; trial < 300; ++trial) {
            const Complex zeta(re(rng), im(rng));
            const double h = 1e-6;
            const Complex fd =
                (selfadjoint::cauchy(model, zeta + h) - selfadjoint::cauchy(model, zeta - h)) /
                (2.0 * h);
            const Complex an = selfadjoint::cauchy_prime(model, zeta);
            CHECK(std::abs(fd - an) <= 1e-6 * std::max(1.0, std::abs(an)));
        }
    }
}

TEST_CASE("cauchy transform is Herglotz for self-adjoint models") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> re(-3.5, 3.5), im(0.05, 3.0);
    std::vector<dist::Complex> delta0(8, Complex(0.0, 0.0));
    delta0[0] = Complex(1.0, 0.0);
    const std::vector<OperatorModel> models = {
        OperatorModel::cyclic(2), OperatorModel::arcsine(),
        OperatorModel::moment_series(delta0, 0.1)};
    for (const auto& model : models) {
        int done = 0;
        while (done < 3000) {
            const Complex zeta(re(rng), im(rng));
            Complex g;
            try {
                g = selfadjoint::cauchy(model, zeta);
            } catch (const PoleError&) {
                continue;
            }
            CHECK(g.imag() <= 1e-15);
            // conjugate symmetry G(conj zeta) = conj G(zeta)
            CHECK(std::abs(selfadjoint::cauchy(model, std::conj(zeta)) - std::conj(g)) <
                  1e-12 * (1.0 + std::abs(g)));
            ++done;
        }
    }
}

TEST_CASE("density by Stieltjes inversion") {
    const auto arc = OperatorModel::arcsine();
    const auto mid = selfadjoint::density(arc, 0.0);
    CHECK(std::abs(mid.extrapolated - 1.0 / (2.0 * M_PI)) < 1e-6);
    CHECK(mid.eps_ladder == selfadjoint::kDensityLadder);
    CHECK(mid.values.size() == mid.eps_ladder.size());

    CHECK(selfadjoint::density(arc, 3.0).extrapolated == 0.0);

    const auto near_edge = selfadjoint::density(arc, 1.9);
    CHECK(std::abs(near_edge.extrapolated - 1.0 / (M_PI * std::sqrt(0.39))) < 1e-3);

    // purely atomic distribution has vanishing continuous density
    CHECK(selfadjoint::density(OperatorModel::cyclic(2), 0.5).extrapolated == 0.0);
}

TEST_CASE("density is nonnegative") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> pos(-2.5, 2.5);
    for (int trial = 0; trial < 300; ++trial) {
        const double t = pos(rng);
        if (std::abs(std::abs(t) - 1.0) < 1e-3 || std::abs(std::abs(t) - 2.0) < 1e-3) continue;
        CHECK(selfadjoint::density(OperatorModel::arcsine(), t).extrapolated >= 0.0);
        CHECK(selfadjoint::density(OperatorModel::cyclic(2), t).extrapolated >= 0.0);
    }
}

TEST_CASE("atom masses") {
    const auto c2 = OperatorModel::cyclic(2);
    CHECK(std::abs(selfadjoint::atom_mass(c2, 1.0) - 0.5) < 1e-8);
    CHECK(std::abs(selfadjoint::atom_mass(c2, -1.0) - 0.5) < 1e-8);
    CHECK(selfadjoint::atom_mass(c2, 0.0) == 0.0);
    CHECK(selfadjoint::atom_mass(OperatorModel::arcsine(), 0.0) == 0.0);
}

TEST_CASE("resolvent L2 norm") {
    const auto c2 = OperatorModel::cyclic(2);
    // -G'(2) for G = zeta/(zeta^2-1) is 5/9
    CHECK(std::abs(selfadjoint::l2_resolvent_norm_sq(c2, {2.0, 0.0}) - 5.0 / 9.0) < 1e-12);
    // ~ 1/|zeta|^2 far away
    const double far = selfadjoint::l2_resolvent_norm_sq(c2, {0.0, 100.0});
    CHECK(std::abs(far - 1e-4) < 1e-7);
    const auto arc = OperatorModel::arcsine();
    CHECK(std::abs(selfadjoint::l2_resolvent_norm_sq(arc, {3.0, 0.0}) -
                   3.0 / std::pow(5.0, 1.5)) < 1e-12);

    // real, positive, conjugate-symmetric
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.2, 2.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const Complex zeta(re(rng), im(rng));
        const double up = selfadjoint::l2_resolvent_norm_sq(arc, zeta);
        CHECK(up > 0.0);
        CHECK(std::abs(up - selfadjoint::l2_resolvent_norm_sq(arc, std::conj(zeta))) <=
              1e-12 * up);
    }
}

TEST_CASE("resolvent norm from the inverse transform") {
    // point mass at 0: G = 1/zeta, K(z) = 1/z, norm^2 at real z is z^2
    auto K = [](Complex z) { return 1.0 / z; };
    auto Kp = [](Complex z) { return -1.0 / (z * z); };
    CHECK(std::abs(selfadjoint::k_resolvent_norm_sq(K, Kp, {0.4, 0.0}) - 0.16) < 1e-13);

    // cyclic(2): K(z) = (1 + sqrt(1 + 4 z^2)) / (2 z); evaluating at
    // z = G(2) = 2/3 must reproduce the direct norm 5/9
    auto K2 = [](Complex z) { return (1.0 + std::sqrt(1.0 + 4.0 * z * z)) / (2.0 * z); };
    auto K2p = [&](Complex z) {
        const double h = 1e-7;
        return (K2(z + h) - K2(z - h)) / (2.0 * h);
    };
    CHECK(std::abs(selfadjoint::k_resolvent_norm_sq(K2, K2p, {2.0 / 3.0, 0.0}) - 5.0 / 9.0) <
          1e-6);

    // arcsine: K(z) = sqrt(4 + 1/z^2) at z = G(3) = 1/sqrt(5)
    auto K3 = [](Complex z) { return std::sqrt(4.0 + 1.0 / (z * z)); };
    auto K3p = [&](Complex z) {
        const double h = 1e-7;
        return (K3(z + h) - K3(z - h)) / (2.0 * h);
    };
    CHECK(std::abs(selfadjoint::k_resolvent_norm_sq(K3, K3p, {1.0 / std::sqrt(5.0), 0.0}) -
                   3.0 / std::pow(5.0, 1.5)) < 1e-6);

    // off the real axis the difference-quotient form applies
    const Complex z(0.2, 0.1);
    const double v = selfadjoint::k_resolvent_norm_sq(K, Kp, z);
    CHECK(std::abs(v + (z - std::conj(z)).imag() /
                           (K(z) - std::conj(K(z))).imag()) < 1e-12);
}

TEST_CASE("blow-up scan flags the spectrum") {
    // two atoms at +-1: flags cluster tightly around them
    const auto flags2 = selfadjoint::blowup_scan(OperatorModel::cyclic(2), -1.5, 1.5, 0.01);
    REQUIRE(!flags2.empty());
    bool saw_plus = false, saw_minus = false;
    for (double t : flags2) {
        CHECK(std::min(std::abs(t - 1.0), std::abs(t + 1.0)) < 0.005);
        saw_plus = saw_plus || std::abs(t - 1.0) < 0.005;
        saw_minus = saw_minus || std::abs(t + 1.0) < 0.005;
    }
    CHECK(saw_plus);
    CHECK(saw_minus);

    // stored point mass at 0 flags a cluster containing the origin
    std::vector<dist::Complex> delta0(8, Complex(0.0, 0.0));
    delta0[0] = Complex(1.0, 0.0);
    const auto series_model = OperatorModel::moment_series(delta0, 0.1);
    const auto flags0 = selfadjoint::blowup_scan(series_model, -1.0, 1.0, 0.05);
    REQUIRE(!flags0.empty());
    bool saw_zero = false;
    for (double t : flags0) {
        CHECK(std::abs(t) <= 0.2 + 1e-12);
        saw_zero = saw_zero || std::abs(t) < 1e-12;
    }
    CHECK(saw_zero);

    // absolutely continuous arcsine law fills [-2, 2]
    const auto flagsa = selfadjoint::blowup_scan(OperatorModel::arcsine(), -2.2, 2.2, 0.05);
    int inside = 0;
    for (double t = -1.95; t <= 1.95 + 1e-9; t += 0.05) ++inside;
    int flagged_inside = 0;
    for (double t : flagsa) {
        CHECK(std::abs(t) <= 2.001);
        if (std::abs(t) <= 1.95) ++flagged_inside;
    }
    CHECK(flagged_inside >= (9 * inside) / 10);
}

TEST_CASE("atom location and total mass") {
    const auto atoms = selfadjoint::locate_atoms(OperatorModel::cyclic(2), -2.0, 2.0, 0.01);
    REQUIRE(atoms.size() == 2);
    CHECK(std::abs(atoms[0].location + 1.0) < 1e-6);
    CHECK(std::abs(atoms[1].location - 1.0) < 1e-6);
    CHECK(std::abs(atoms[0].mass - 0.5) < 1e-6);
    CHECK(std::abs(atoms[1].mass - 0.5) < 1e-6);

    CHECK(selfadjoint::locate_atoms(OperatorModel::arcsine(), -2.5, 2.5, 0.05).empty());
}

TEST_CASE("total mass accounting") {
    // cyclic(2): continuous part vanishes, atoms carry everything
    const auto c2 = OperatorModel::cyclic(2);
    double total = selfadjoint::atom_mass(c2, 1.0) + selfadjoint::atom_mass(c2, -1.0);
    double grid = 0.0;
    for (double t = -1.995; t < 2.0; t += 0.01)  // offset grid avoids the atoms
        grid += 0.01 * selfadjoint::density(c2, t).extrapolated;
    total += grid;
    CHECK(total > 0.995);
    CHECK(total < 1.005);

    // arcsine: substitute t = 2 cos(theta) to tame the edge singularity
    const auto arc = OperatorModel::arcsine();
    const int n = 200;
    double integral = 0.0;
    for (int k = 0; k < n; ++k) {
        const double theta = M_PI * (k + 0.5) / n;
        const double t = 2.0 * std::cos(theta);
        integral += selfadjoint::density(arc, t).extrapolated * 2.0 * std::sin(theta) *
                    (M_PI / n);
    }
    CHECK(integral > 0.995);
    CHECK(integral < 1.005);
}
