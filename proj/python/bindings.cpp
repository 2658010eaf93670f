#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vortexlab/analysis.hpp"
#include "vortexlab/chip.hpp"
#include "vortexlab/fock.hpp"
#include "vortexlab/gaussian.hpp"

namespace py = pybind11;
using namespace vortexlab;
using fock::PureState;
using fock::c64;

namespace {

std::vector<c64> amplitudes_copy(const PureState& s) {
    return {s.amplitudes().begin(), s.amplitudes().end()};
}

} // namespace

PYBIND11_MODULE(_vortexlab, m) {
    m.doc() = "Truncated Fock-space toolkit for heralded photonic vortex states";

    py::register_exception<CutoffError>(m, "CutoffError");
    py::register_exception<CutoffLeakageError>(m, "CutoffLeakageError");
    py::register_exception<ShapeError>(m, "ShapeError");
    py::register_exception<ImpossibleHeraldError>(m, "ImpossibleHeraldError");
    py::register_exception<UndefinedRatioError>(m, "UndefinedRatioError");

    py::class_<PureState>(m, "PureState")
        .def(py::init<int, int>(), py::arg("modes"), py::arg("cutoff"))
        .def_property_readonly("modes", [](const PureState& s) { return s.modes(); })
        .def_property_readonly("cutoff", [](const PureState& s) { return s.cutoff(); })
        .def_property_readonly("leakage", &PureState::leakage)
        .def("amplitudes", &amplitudes_copy, "flat amplitude list, first mode outermost")
        .def("amplitude",
             [](const PureState& s, const std::vector<int>& occ) { return s.amplitude(occ); })
        .def("norm_sqr", &PureState::norm_sqr)
        .def("__repr__", [](const PureState& s) {
            return "<PureState modes=" + std::to_string(s.modes()) +
                   " cutoff=" + std::to_string(s.cutoff()) + ">";
        });

    py::class_<gaussian::SqueezeParam>(m, "SqueezeParam")
        .def(py::init<double, double>(), py::arg("r"), py::arg("theta_s") = 0.0)
        .def_readonly("r", &gaussian::SqueezeParam::r)
        .def_readonly("theta_s", &gaussian::SqueezeParam::theta_s);

    py::class_<analysis::EntanglementReport>(m, "EntanglementReport")
        .def_readonly("log_negativity", &analysis::EntanglementReport::log_negativity)
        .def_readonly("negativity", &analysis::EntanglementReport::negativity)
        .def_readonly("schmidt_coefficients", &analysis::EntanglementReport::schmidt_coefficients)
        .def_readonly("schmidt_log_negativity",
                      &analysis::EntanglementReport::schmidt_log_negativity);

    py::class_<chip::ThreeModeResult>(m, "ThreeModeResult")
        .def_readonly("d1_state", &chip::ThreeModeResult::d1_state)
        .def_readonly("d2_state", &chip::ThreeModeResult::d2_state)
        .def_readonly("p1", &chip::ThreeModeResult::p1)
        .def_readonly("p2", &chip::ThreeModeResult::p2);

    // fock
    m.def(
        "make_fock_state",
        [](int modes, int cutoff, const std::vector<int>& occ) {
            return fock::make_fock_state(modes, cutoff, occ);
        },
        py::arg("modes"), py::arg("cutoff"), py::arg("occupation"));
    m.def("inner_product", &fock::inner_product);
    m.def("fidelity", &fock::fidelity);
    m.def(
        "project_pattern",
        [](const PureState& s, const std::vector<std::pair<int, int>>& assignments) {
            fock::HeraldPattern p;
            p.assignments = assignments;
            return fock::project_pattern(s, p);
        },
        py::arg("state"), py::arg("assignments"),
        "project onto (mode, count) pins; returns (state, probability)");
    m.def(
        "schmidt_coefficients",
        [](const PureState& s, const std::vector<int>& left, const std::vector<int>& right) {
            return fock::schmidt_decompose(s, left, right).coefficients;
        },
        py::arg("state"), py::arg("left_modes"), py::arg("right_modes"));

    // gaussian
    m.def(
        "apply_squeeze",
        [](const PureState& s, int mode, double r, double theta_s, bool override_leakage) {
            return gaussian::apply_squeeze(s, mode, gaussian::SqueezeParam(r, theta_s),
                                           override_leakage);
        },
        py::arg("state"), py::arg("mode"), py::arg("r"), py::arg("theta_s") = 0.0,
        py::arg("override_leakage") = false);
    m.def(
        "apply_two_mode_squeeze",
        [](const PureState& s, int mode_j, int mode_l, double r, double theta_s,
           bool override_leakage) {
            return gaussian::apply_two_mode_squeeze(s, mode_j, mode_l,
                                                    gaussian::SqueezeParam(r, theta_s),
                                                    override_leakage);
        },
        py::arg("state"), py::arg("mode_j"), py::arg("mode_l"), py::arg("r"),
        py::arg("theta_s") = 0.0, py::arg("override_leakage") = false);
    m.def("apply_coupler", &gaussian::apply_coupler, py::arg("state"), py::arg("mode_j"),
          py::arg("mode_l"), py::arg("theta"));
    m.def("apply_phase", &gaussian::apply_phase, py::arg("state"), py::arg("mode"), py::arg("phi"));
    m.def("apply_mzi", &gaussian::apply_mzi, py::arg("state"), py::arg("mode_j"), py::arg("mode_l"),
          py::arg("phi1"), py::arg("phi2"));
    m.def("apply_y_junction", &gaussian::apply_y_junction, py::arg("state"), py::arg("mode_j"),
          py::arg("mode_l"));
    m.def(
        "squeezed_number_state",
        [](int n, double r, double theta_s, int cutoff) {
            return gaussian::squeezed_number_state(n, gaussian::SqueezeParam(r, theta_s), cutoff);
        },
        py::arg("n"), py::arg("r"), py::arg("theta_s"), py::arg("cutoff"));
    m.def("default_cutoff", &gaussian::default_cutoff, py::arg("r_max"));

    // chip
    m.def("make_cv_vortex", &chip::make_cv_vortex, py::arg("r"), py::arg("eta_prime"), py::arg("n"),
          py::arg("cutoff"));
    m.def("make_dv_vortex", &chip::make_dv_vortex, py::arg("eta_prime"), py::arg("phi1"),
          py::arg("n"), py::arg("cutoff") = 1);
    m.def("dv_regime_input", &chip::dv_regime_input, py::arg("r"), py::arg("theta_s") = 0.0,
          py::arg("cutoff") = 2);
    m.def(
        "first_order_state",
        [](double r, double phi1, double phi2, double t1, double t2, int cutoff) {
            chip::VortexParams p;
            p.r = r;
            p.phi1 = phi1;
            p.phi2 = phi2;
            p.t1 = t1;
            p.t2 = t2;
            p.eta = (std::sqrt(1 - t2 * t2) * t1) / (std::sqrt(1 - t1 * t1) * t2);
            return chip::first_order_state(p, cutoff);
        },
        py::arg("r"), py::arg("phi1"), py::arg("phi2"), py::arg("t1") = 0.995,
        py::arg("t2") = 0.995, py::arg("cutoff") = 16);
    m.def(
        "herald_vortex",
        [](const PureState& s, int click_mode) {
            if (click_mode != 3 && click_mode != 4) {
                throw std::invalid_argument("click_mode must be 3 or 4");
            }
            return chip::herald_vortex(
                s, click_mode == 3 ? chip::HeraldClick::Mode3 : chip::HeraldClick::Mode4);
        },
        py::arg("state"), py::arg("click_mode"));
    m.def(
        "three_mode_chip",
        [](double r, double t, int cutoff) {
            const chip::TapParam tap{std::sqrt(1.0 - t * t), t};
            return chip::three_mode_chip(r, tap, tap, tap, cutoff);
        },
        py::arg("r"), py::arg("t") = 0.995, py::arg("cutoff") = 16);
    m.def("qpm_period", &chip::qpm_period, py::arg("beta_p"), py::arg("beta_s"), py::arg("beta_i"));
    m.def("eo_phase", &chip::eo_phase, py::arg("n"), py::arg("r_eo"), py::arg("voltage"),
          py::arg("electrode_length"), py::arg("wavelength"), py::arg("gap"));
    m.def(
        "heralded_flux",
        [](double pair_flux, double prop_loss_db_per_cm, double length_cm, double geometric_loss_db,
           double coupling_loss_db, double detector_efficiency, double tap_reflectance,
           int tap_count) {
            chip::BudgetInput b{pair_flux,        prop_loss_db_per_cm, length_cm,
                                geometric_loss_db, coupling_loss_db,    detector_efficiency,
                                tap_reflectance,   tap_count};
            return chip::heralded_flux(b);
        },
        py::arg("pair_flux") = 1.4e7, py::arg("prop_loss_db_per_cm") = 0.3,
        py::arg("length_cm") = 5.0, py::arg("geometric_loss_db") = 1.0,
        py::arg("coupling_loss_db") = 1.0, py::arg("detector_efficiency") = 0.1,
        py::arg("tap_reflectance") = 0.01, py::arg("tap_count") = 2);

    // analysis
    m.def(
        "wigner_numeric",
        [](const PureState& s, const std::vector<std::pair<c64, c64>>& points) {
            return analysis::wigner_numeric(s, points);
        },
        py::arg("state"), py::arg("points"));
    m.def("wigner_analytic", &analysis::wigner_vortex_analytic_at, py::arg("r"),
          py::arg("eta_prime"), py::arg("alpha1"), py::arg("alpha2"));
    m.def("negativity_predicate", &analysis::negativity_predicate, py::arg("r"),
          py::arg("eta_prime"), py::arg("a1"), py::arg("a2"), py::arg("delta1"), py::arg("delta2"));
    m.def("lz_expectation", &analysis::lz_expectation, py::arg("state"));
    m.def(
        "lz_counting",
        [](const PureState& s) {
            const analysis::CountingMeasurement c = analysis::lz_counting_measurement(s);
            return std::make_pair(std::map<int, double>(c.distribution.begin(), c.distribution.end()),
                                  c.mean);
        },
        py::arg("state"), "returns ({difference: probability}, mean)");
    m.def("logneg_numeric", &analysis::logneg_numeric, py::arg("state"));
    m.def("logneg_analytic", &analysis::logneg_analytic, py::arg("r"), py::arg("Phi"));
    m.def("schmidt_coeffs_analytic", &analysis::schmidt_coeffs_analytic, py::arg("r"),
          py::arg("Phi"), py::arg("count"));
    m.def("entanglement_ratio", &analysis::entanglement_ratio, py::arg("r"), py::arg("Phi"));
    m.def("elliptical_basis_rotate", &analysis::elliptical_basis_rotate, py::arg("state"),
          py::arg("Phi"), py::arg("n") = 0);
    m.def("cat_coefficients", &analysis::cat_coefficients, py::arg("eta"), py::arg("phi1"),
          py::arg("phi2"));
    m.def(
        "kitten_fidelity",
        [](double r, bool even_parity) {
            const analysis::KittenFit fit = analysis::kitten_fidelity(r, even_parity);
            return std::make_pair(fit.alpha_star, fit.fidelity);
        },
        py::arg("r"), py::arg("even_parity"), "returns (alpha_star, fidelity)");
}
