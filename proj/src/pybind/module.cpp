#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "freespectra/boundary.hpp"
#include "freespectra/curve_data.hpp"
#include "freespectra/freesum.hpp"
#include "freespectra/model.hpp"
#include "freespectra/oracle.hpp"
#include "freespectra/selfadjoint.hpp"
#include "freespectra/twoop.hpp"

namespace py = pybind11;
using namespace freespectra;
using Complex = std::complex<double>;

namespace {

dist::FreeSumModel model_of(const std::string& text) { return dist::parse_model(text); }

py::dict classify(const std::string& model_str, Complex lambda, bool alt) {
    const auto models = model_of(model_str);
    const double target = std::abs(lambda);
    py::dict out;
    try {
        std::optional<freesum::ParameterState> state;
        const double r_out = models.norm_bound() + 1.0;
        if (target >= r_out) {
            state = freesum::solve_parameters(models, lambda);
        } else if (target > 1e-12) {
            const double theta = std::arg(lambda);
            state = freesum::solve_parameters(models, std::polar(r_out, theta));
            for (double r = r_out; r > target;) {
                r = std::max(target, r - 0.005 * r_out);
                state = freesum::solve_parameters(models, std::polar(r, theta), state);
            }
        }
        if (!state) {
            out["classification"] = "Undetermined";
            return out;
        }
        const auto report = freesum::criterion(models, *state, alt);
        out["classification"] = freesum::to_string(report.classification);
        out["phi"] = report.phi;
        out["z"] = state->z;
        out["s"] = state->s;
        out["x"] = report.x;
        out["l2_norm_sq"] = report.l2_norm_sq;
    } catch (const Error&) {
        out["classification"] = "Undetermined";
    }
    return out;
}

py::list trace(const std::string& model_str, int rays, double tol, bool alt) {
    const auto curve = boundary::trace_boundary(model_of(model_str), rays, {0.0, 0.0}, tol,
                                                alt);
    py::list samples;
    for (const auto& s : curve.samples) {
        py::dict d;
        d["theta"] = s.theta;
        d["r"] = s.r;
        d["lambda"] = s.lambda;
        d["phi_residual"] = s.phi_residual;
        d["solver_residual"] = s.solver_residual;
        samples.append(d);
    }
    return samples;
}

std::vector<std::string> moments(const std::string& model_str, int order) {
    const auto models = model_of(model_str);
    std::vector<std::vector<series::RationalComplex>> sequences;
    for (const auto& m : models.summands)
        sequences.push_back(freesum::model_moments(m, order));
    std::vector<std::string> out;
    for (const auto& m : freesum::free_convolution_moments(sequences, order))
        out.push_back(m.to_string());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "spectra of sums of free operators";

    py::register_exception<Error>(m, "FreeSpectraError");

    m.def("model_string", [](const std::string& text) { return model_of(text).to_string(); },
          py::arg("model"), "parse a model string and print it back canonically");
    m.def("norm_bound", [](const std::string& text) { return model_of(text).norm_bound(); },
          py::arg("model"));
    m.def("classify", &classify, py::arg("model"), py::arg("lambda_"),
          py::arg("alt_denominator") = false,
          "classify a spectral parameter: Outside / Boundary / Undetermined");
    m.def("trace_boundary", &trace, py::arg("model"), py::arg("rays") = 90,
          py::arg("tol") = 1e-10, py::arg("alt_denominator") = false,
          "trace the outer spectrum border; list of polished samples");
    m.def("spectral_radius",
          [](const std::string& text) {
              const auto sample = boundary::trace_ray(model_of(text), 0.0);
              if (!sample) throw NumericFailure("no real-axis crossing found");
              return sample->r;
          },
          py::arg("model"), "outer border radius along the positive real axis");
    m.def("cauchy",
          [](const std::string& text, Complex zeta) {
              return selfadjoint::cauchy(model_of(text).summands.at(0), zeta);
          },
          py::arg("model"), py::arg("zeta"));
    m.def("density",
          [](const std::string& text, double t) {
              return selfadjoint::density(model_of(text).summands.at(0), t).extrapolated;
          },
          py::arg("model"), py::arg("t"));
    m.def("atom_mass",
          [](const std::string& text, double t) {
              return selfadjoint::atom_mass(model_of(text).summands.at(0), t);
          },
          py::arg("model"), py::arg("t"));
    m.def("moments", &moments, py::arg("model"), py::arg("order") = 10,
          "exact moments of the free sum, as rational strings");
    m.def("trace_moment",
          [](const std::vector<int>& orders, int p) {
              return oracle::trace_moment(oracle::GroupSpec(orders), p).str();
          },
          py::arg("orders"), py::arg("p"),
          "exact word-count moment of the sum of cyclic generators");
    m.def("factorization_check", &twoop::factorization_check, py::arg("m"), py::arg("n"),
          py::arg("s"), py::arg("t"));
    m.def("feasible_t", &twoop::feasible_t, py::arg("m"), py::arg("n"), py::arg("s"));
    m.def("implicit_curve_eval", &boundary::implicit_curve_eval, py::arg("x"), py::arg("y"));
    m.def("data_checksum", &curvedata::data_checksum);
}
