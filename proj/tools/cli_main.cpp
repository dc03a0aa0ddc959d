// command-line surface for the free-probability spectrum toolkit
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "freespectra/boundary.hpp"
#include "freespectra/curve_data.hpp"
#include "freespectra/freesum.hpp"
#include "freespectra/model.hpp"
#include "freespectra/oracle.hpp"
#include "freespectra/selfadjoint.hpp"
#include "freespectra/twoop.hpp"

using namespace freespectra;
using Complex = std::complex<double>;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitPartial = 2;
constexpr int kExitUsage = 64;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// complex literal a+bi / a-bi, no spaces
Complex parse_complex(const std::string& text) {
    if (text.empty()) throw InvalidInput("empty complex literal");
    std::string body = text;
    double re = 0.0, im = 0.0;
    if (body.back() == 'i' || body.back() == 'I') {
        body.pop_back();
        // split at the last +/- that is not an exponent sign or leading
        std::size_t split = std::string::npos;
        for (std::size_t k = body.size(); k-- > 1;) {
            if ((body[k] == '+' || body[k] == '-') &&
                body[k - 1] != 'e' && body[k - 1] != 'E') {
                split = k;
                break;
            }
        }
        try {
            if (split == std::string::npos) {
                im = body.empty() || body == "+" ? 1.0 : body == "-" ? -1.0 : std::stod(body);
            } else {
                re = std::stod(body.substr(0, split));
                std::string imag_part = body.substr(split);
                im = imag_part == "+" ? 1.0 : imag_part == "-" ? -1.0 : std::stod(imag_part);
            }
        } catch (const std::exception&) {
            throw InvalidInput("bad complex literal: " + text);
        }
    } else {
        try {
            re = std::stod(body);
        } catch (const std::exception&) {
            throw InvalidInput("bad complex literal: " + text);
        }
    }
    return {re, im};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot open output file " + path);
    out << content;
}

std::string curve_csv(const boundary::BoundaryCurve& curve) {
    std::string csv = "theta,r,x,y,phi_residual,solver_residual\n";
    for (const auto& s : curve.samples) {
        csv += fmt(s.theta) + "," + fmt(s.r) + "," + fmt(s.lambda.real()) + "," +
               fmt(s.lambda.imag()) + "," + fmt(s.phi_residual) + "," +
               fmt(s.solver_residual) + "\n";
    }
    return csv;
}

json curve_json(const boundary::BoundaryCurve& curve, const std::string& model, int rays) {
    json samples = json::array();
    for (const auto& s : curve.samples)
        samples.push_back({{"theta", s.theta},
                           {"r", s.r},
                           {"x", s.lambda.real()},
                           {"y", s.lambda.imag()},
                           {"phi_residual", s.phi_residual},
                           {"solver_residual", s.solver_residual}});
    return json{{"model", model},
                {"center", {curve.center.real(), curve.center.imag()}},
                {"rays", rays},
                {"samples", samples},
                {"gaps", curve.gaps}};
}

std::string curve_svg(const boundary::BoundaryCurve& curve) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : curve.samples) {
        xmin = std::min(xmin, s.lambda.real());
        xmax = std::max(xmax, s.lambda.real());
        ymin = std::min(ymin, s.lambda.imag());
        ymax = std::max(ymax, s.lambda.imag());
    }
    if (curve.samples.empty()) xmin = ymin = -1.0, xmax = ymax = 1.0;
    const double mx = 0.05 * std::max(xmax - xmin, 1e-6);
    const double my = 0.05 * std::max(ymax - ymin, 1e-6);
    xmin -= mx, xmax += mx, ymin -= my, ymax += my;
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt6(xmin) +
                      " " + fmt6(-ymax) + " " + fmt6(xmax - xmin) + " " + fmt6(ymax - ymin) +
                      "\">\n";
    if (!curve.samples.empty()) {
        svg += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"" +
               fmt6(0.005 * (xmax - xmin)) + "\" points=\"";
        for (const auto& s : curve.samples)
            svg += fmt6(s.lambda.real()) + "," + fmt6(-s.lambda.imag()) + " ";
        if (curve.closed)
            svg += fmt6(curve.samples.front().lambda.real()) + "," +
                   fmt6(-curve.samples.front().lambda.imag());
        svg += "\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

// continuation from outside the norm bound toward lambda along its ray
std::optional<freesum::ParameterState> continue_to(const dist::FreeSumModel& models,
                                                   Complex lambda) {
    const double target = std::abs(lambda);
    if (target < 1e-12) return std::nullopt;
    const double r_out = models.norm_bound() + 1.0;
    const double theta = std::arg(lambda);
    if (target >= r_out)
        return freesum::solve_parameters(models, lambda, std::nullopt);
    const double step = 0.005 * r_out;
    std::optional<freesum::ParameterState> state =
        freesum::solve_parameters(models, std::polar(r_out, theta), std::nullopt);
    for (double r = r_out;;) {
        r = std::max(target, r - step);
        state = freesum::solve_parameters(models, std::polar(r, theta), state);
        if (r <= target) return state;
    }
}

int cmd_trace(const std::string& model_str, int rays, const std::string& center_str,
              double tol, bool alt, int threads, const std::string& out,
              const std::string& json_out, const std::string& svg_out) {
    const auto models = dist::parse_model(model_str);
    const Complex center = parse_complex(center_str);
    const auto curve = boundary::trace_boundary(models, rays, center, tol, alt, threads);
    if (!out.empty()) write_file(out, curve_csv(curve));
    if (!json_out.empty()) write_file(json_out, curve_json(curve, models.to_string(), rays).dump(2) + "\n");
    if (!svg_out.empty()) write_file(svg_out, curve_svg(curve));
    std::cout << "samples=" << curve.samples.size() << " gaps=" << curve.gaps.size()
              << " closed=" << (curve.closed ? "yes" : "no") << "\n";
    return curve.closed ? kExitOk : kExitPartial;
}

int cmd_radius(const std::string& model_str, double tol) {
    const auto models = dist::parse_model(model_str);
    bool partial = false;
    for (double theta : {0.0, M_PI}) {
        std::optional<double> r;
        if (auto sample = boundary::trace_ray(models, theta, {0.0, 0.0}, tol))
            r = sample->r;
        else
            r = boundary::ray_crossing_radius(models, theta, {0.0, 0.0}, tol);
        if (r)
            std::cout << "theta=" << fmt6(theta) << " r=" << fmt(*r) << "\n";
        else {
            std::cout << "theta=" << fmt6(theta) << " r=none\n";
            partial = true;
        }
    }
    return partial ? kExitPartial : kExitOk;
}

int cmd_classify(const std::string& model_str, const std::string& lambda_str, bool alt) {
    const auto models = dist::parse_model(model_str);
    const Complex lambda = parse_complex(lambda_str);
    try {
        auto state = continue_to(models, lambda);
        if (!state) {
            std::cout << "classification=Undetermined\n";
            return kExitOk;
        }
        const auto report = freesum::criterion(models, *state, alt);
        std::cout << "classification=" << freesum::to_string(report.classification)
                  << "\nphi=" << fmt(report.phi) << "\nz=" << fmt(state->z.real()) << "+"
                  << fmt(state->z.imag()) << "i\n";
        for (std::size_t i = 0; i < state->s.size(); ++i)
            std::cout << "s" << i + 1 << "=" << fmt(state->s[i].real()) << "+"
                      << fmt(state->s[i].imag()) << "i x" << i + 1 << "=" << fmt(report.x[i])
                      << "\n";
        return kExitOk;
    } catch (const Error&) {
        std::cout << "classification=Undetermined\n";
        return kExitOk;
    }
}

const dist::OperatorModel& single_summand(const dist::FreeSumModel& models) {
    if (models.summands.size() != 1)
        throw InvalidInput("this command needs a single-summand model");
    return models.summands[0];
}

int cmd_density(const std::string& model_str, double from, double to, double step,
                const std::string& out) {
    const auto models = dist::parse_model(model_str);
    const auto& model = single_summand(models);
    if (!model.self_adjoint())
        throw InvalidInput("density needs a self-adjoint model");
    const double lo = std::isfinite(from) ? from : -model.norm_bound() - 1.0;
    const double hi = std::isfinite(to) ? to : model.norm_bound() + 1.0;
    std::string csv = "t,density\n";
    for (double t = lo; t <= hi + 0.5 * step; t += step) {
        const auto sample = selfadjoint::density(model, t);
        csv += fmt(t) + "," + fmt(sample.extrapolated) + "\n";
    }
    if (!out.empty())
        write_file(out, csv);
    else
        std::cout << csv;
    return kExitOk;
}

int cmd_atoms(const std::string& model_str, double from, double to, double step,
              const std::string& out) {
    const auto models = dist::parse_model(model_str);
    const auto& model = single_summand(models);
    if (!model.self_adjoint())
        throw InvalidInput("atoms needs a self-adjoint model");
    const double lo = std::isfinite(from) ? from : -model.norm_bound() - 0.5;
    const double hi = std::isfinite(to) ? to : model.norm_bound() + 0.5;
    const auto atoms = selfadjoint::locate_atoms(model, lo, hi, step);
    std::string csv = "location,mass\n";
    for (const auto& a : atoms) csv += fmt(a.location) + "," + fmt(a.mass) + "\n";
    if (!out.empty())
        write_file(out, csv);
    else
        std::cout << csv;
    return kExitOk;
}

int cmd_moments(const std::string& model_str, int order, bool check_oracle) {
    const auto models = dist::parse_model(model_str);
    std::vector<std::vector<series::RationalComplex>> sequences;
    for (const auto& m : models.summands)
        sequences.push_back(freesum::model_moments(m, order));
    const auto moments = freesum::free_convolution_moments(sequences, order);
    for (int k = 0; k <= order; ++k)
        std::cout << "m" << k << "=" << moments[k].to_string() << "\n";
    if (check_oracle) {
        std::vector<int> orders;
        for (const auto& m : models.summands) {
            if (m.kind() != dist::OperatorModel::Kind::Cyclic)
                throw InvalidInput("--check-oracle needs cyclic summands only");
            orders.push_back(m.cyclic_order());
        }
        const oracle::GroupSpec group(orders);
        bool match = true;
        for (int k = 0; k <= order; ++k) {
            const auto expected = oracle::trace_moment(group, k);
            if (moments[k].im != 0 ||
                moments[k].re != series::Rational(expected)) {
                match = false;
                break;
            }
        }
        std::cout << (match ? "oracle=MATCH" : "oracle=MISMATCH") << "\n";
        if (!match) return kExitNumeric;
    }
    return kExitOk;
}

int cmd_identity_check(int m, int n, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(0.05, 0.6), angle(0.0, 2.0 * M_PI);
    double worst = 0.0;
    int done = 0, skipped = 0;
    while (done < samples) {
        const Complex s = std::polar(radius(rng), angle(rng));
        try {
            const Complex t = twoop::feasible_t(m, n, s);
            worst = std::max(worst, twoop::factorization_check(m, n, s, t));
            ++done;
        } catch (const Error&) {
            ++skipped;  // infeasible draw (e.g. s^m = 1 or coupling violated)
            if (skipped > 100 * samples)
                throw NumericFailure("identity-check: cannot find feasible samples");
        }
    }
    std::cout << "samples=" << done << " skipped=" << skipped
              << " max_residual=" << fmt(worst) << "\n";
    return worst <= 1e-12 ? kExitOk : kExitNumeric;
}

int cmd_eigmethod(int points, double radius, const std::string& out) {
    std::vector<Complex> grid;
    for (int k = 0; k < points; ++k)
        grid.push_back(std::polar(radius, 2.0 * M_PI * k / points));
    const auto results = boundary::eigmethod_run(
        [](Complex z) { return curvedata::multiplication_matrix(z); }, grid);
    std::string csv = "x,y,s_re,s_im,residual,indicator,admissible\n";
    for (const auto& res : results)
        for (std::size_t k = 0; k < res.eigenvalues.size(); ++k) {
            if (!res.admissible[k]) continue;
            csv += fmt(res.z.real()) + "," + fmt(res.z.imag()) + "," +
                   fmt(res.eigenvalues[k].real()) + "," + fmt(res.eigenvalues[k].imag()) +
                   "," + fmt(res.residuals[k]) + "," + fmt(res.boundary_indicator[k]) +
                   ",1\n";
        }
    if (!out.empty())
        write_file(out, csv);
    else
        std::cout << csv;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectra of sums of free operators"};
    app.require_subcommand(1);

    std::string model_str, lambda_str, out, json_out, svg_out, center_str = "0+0i";
    int rays = 360, order = 10, mm = 2, nn = 3, samples = 20, points = 100;
    double tol = 1e-10, step = 1e-2, from = NAN, to = NAN, grid_radius = 2.5;
    std::uint64_t seed = 1;
    int threads = 1;
    bool alt = false, check_oracle = false;

    auto* trace = app.add_subcommand("trace", "trace the outer spectrum border");
    trace->add_option("--model", model_str)->required();
    trace->add_option("--rays", rays);
    trace->add_option("--center", center_str);
    trace->add_option("--tol", tol);
    trace->add_option("--threads", threads);
    trace->add_flag("--alt-denominator", alt);
    trace->add_option("--out", out);
    trace->add_option("--json", json_out);
    trace->add_option("--svg", svg_out);

    auto* radius_cmd = app.add_subcommand("radius", "outer radius along the real axis");
    radius_cmd->add_option("--model", model_str)->required();
    radius_cmd->add_option("--tol", tol);

    auto* classify = app.add_subcommand("classify", "classify one spectral parameter");
    classify->add_option("--model", model_str)->required();
    classify->add_option("--lambda", lambda_str)->required();
    classify->add_flag("--alt-denominator", alt);

    auto* density = app.add_subcommand("density", "spectral density samples");
    density->add_option("--model", model_str)->required();
    density->add_option("--from", from);
    density->add_option("--to", to);
    density->add_option("--step", step);
    density->add_option("--out", out);

    auto* atoms = app.add_subcommand("atoms", "atom locations and masses");
    atoms->add_option("--model", model_str)->required();
    atoms->add_option("--from", from);
    atoms->add_option("--to", to);
    atoms->add_option("--step", step)->default_val(1e-3);
    atoms->add_option("--out", out);

    auto* moments = app.add_subcommand("moments", "moments of the free sum");
    moments->add_option("--model", model_str)->required();
    moments->add_option("--order", order);
    moments->add_flag("--check-oracle", check_oracle);

    auto* identity = app.add_subcommand("identity-check", "resolvent factorization identity");
    identity->add_option("--m", mm);
    identity->add_option("--n", nn);
    identity->add_option("--samples", samples);
    identity->add_option("--seed", seed);

    auto* eig = app.add_subcommand("eigmethod", "matrix eigenvalue method grid run");
    eig->add_option("--points", points);
    eig->add_option("--radius", grid_radius);
    eig->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (trace->parsed())
            return cmd_trace(model_str, rays, center_str, tol, alt, threads, out, json_out,
                             svg_out);
        if (radius_cmd->parsed()) return cmd_radius(model_str, tol);
        if (classify->parsed()) return cmd_classify(model_str, lambda_str, alt);
        if (density->parsed()) return cmd_density(model_str, from, to, step, out);
        if (atoms->parsed()) return cmd_atoms(model_str, from, to, step, out);
        if (moments->parsed()) return cmd_moments(model_str, order, check_oracle);
        if (identity->parsed()) return cmd_identity_check(mm, nn, samples, seed);
        if (eig->parsed()) return cmd_eigmethod(points, grid_radius, out);
    } catch (const InvalidInput& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
