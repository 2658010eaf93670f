// vortexlab: command-line front end producing deterministic CSV/JSON data.
//
// Exit codes: 0 success, 2 usage or config error, 3 analytic mode requested
// where only the numeric path applies, 4 impossible herald.

#include <CLI11.hpp>
#include <json.hpp>

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "vortexlab/analysis.hpp"
#include "vortexlab/chip.hpp"
#include "vortexlab/fock.hpp"
#include "vortexlab/gaussian.hpp"

using namespace vortexlab;
using fock::c64;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitUnsupportedAnalytic = 3;
constexpr int kExitImpossibleHerald = 4;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

int output_digits() {
    if (const char* env = std::getenv("VORTEXLAB_PRECISION")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1 || v > 17) {
            throw UsageError("VORTEXLAB_PRECISION must be an integer in 1..17");
        }
        return static_cast<int>(v);
    }
    return 12;
}

std::string format_value(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits, v);
    return buf;
}

/// Accepts decimals and symbolic multiples of pi: "pi", "-pi/2", "3pi/4",
/// "0.25pi", "2pi/3".
double parse_angle(const std::string& text) {
    std::string s = text;
    double sign = 1.0;
    std::size_t pos = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        if (s[pos] == '-') sign = -1.0;
        ++pos;
    }
    const std::size_t pi_at = s.find("pi", pos);
    if (pi_at == std::string::npos) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw UsageError("cannot parse angle '" + text + "'");
        }
    }
    double coeff = 1.0;
    if (pi_at > pos) {
        try {
            std::size_t used = 0;
            coeff = std::stod(s.substr(pos, pi_at - pos), &used);
            if (used != pi_at - pos) throw std::invalid_argument(s);
        } catch (const std::exception&) {
            throw UsageError("cannot parse angle '" + text + "'");
        }
    }
    double denom = 1.0;
    std::size_t rest = pi_at + 2;
    if (rest < s.size()) {
        if (s[rest] != '/') throw UsageError("cannot parse angle '" + text + "'");
        try {
            std::size_t used = 0;
            denom = std::stod(s.substr(rest + 1), &used);
            if (used != s.size() - rest - 1 || denom == 0.0) throw std::invalid_argument(s);
        } catch (const std::exception&) {
            throw UsageError("cannot parse angle '" + text + "'");
        }
    }
    return sign * coeff * std::numbers::pi / denom;
}

struct AxisSpec {
    double lo = 0.0, hi = 0.0;
    int steps = 0;
};

/// "xmin:xmax:steps[,ymin:ymax:steps]"
std::pair<AxisSpec, AxisSpec> parse_grid(const std::string& text) {
    auto parse_axis = [](const std::string& part) {
        AxisSpec a;
        std::istringstream is(part);
        std::string tok;
        if (!std::getline(is, tok, ':')) throw UsageError("bad grid '" + part + "'");
        a.lo = std::stod(tok);
        if (!std::getline(is, tok, ':')) throw UsageError("bad grid '" + part + "'");
        a.hi = std::stod(tok);
        if (!std::getline(is, tok, ':')) throw UsageError("bad grid '" + part + "'");
        a.steps = std::stoi(tok);
        if (std::getline(is, tok, ':')) throw UsageError("bad grid '" + part + "'");
        if (a.steps < 2 || !(a.hi > a.lo)) throw UsageError("bad grid '" + part + "'");
        return a;
    };
    const std::size_t comma = text.find(',');
    try {
        if (comma == std::string::npos) {
            const AxisSpec a = parse_axis(text);
            return {a, a};
        }
        return {parse_axis(text.substr(0, comma)), parse_axis(text.substr(comma + 1))};
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("cannot parse grid '" + text + "'");
    }
}

analysis::Grid2D to_grid(const std::pair<AxisSpec, AxisSpec>& axes) {
    analysis::Grid2D g;
    g.x_min = axes.first.lo;
    g.x_max = axes.first.hi;
    g.x_steps = axes.first.steps;
    g.y_min = axes.second.lo;
    g.y_max = axes.second.hi;
    g.y_steps = axes.second.steps;
    g.validate();
    return g;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot open output file '" + path + "'");
    return out;
}

// ---------------------------------------------------------------------------

int cmd_field(const std::string& grid_text, double r, double eta_prime, int n, double theta_s,
              const std::string& what, const std::string& mode, int cutoff_opt,
              const std::string& out_path) {
    if (what != "prob" && what != "phase" && what != "both") {
        throw UsageError("--what must be prob|phase|both");
    }
    if (mode != "analytic" && mode != "numeric") throw UsageError("--mode must be analytic|numeric");
    if (r < 0.0 || eta_prime < 0.0) throw UsageError("--r and --eta-prime must be >= 0");
    const analysis::Grid2D grid = to_grid(parse_grid(grid_text));

    std::vector<c64> field;
    if (mode == "analytic") {
        if (theta_s != 0.0) {
            std::cerr << "field: the closed form needs a real squeezing parameter (theta-s = 0)\n";
            return kExitUnsupportedAnalytic;
        }
        field = analysis::vortex_wavefunction_analytic(r, eta_prime, n, grid);
    } else {
        const int cutoff = cutoff_opt > 0 ? cutoff_opt : gaussian::default_cutoff(r) + 8;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        const fock::PureState state = chip::two_term_vortex(gaussian::SqueezeParam(r, theta_s),
                                                            c64{0.0, sign * eta_prime}, cutoff);
        field = analysis::field_wavefunction(state, grid);
    }
    auto [prob, phase] = analysis::density_and_phase(field);

    const int digits = output_digits();
    std::ofstream out = open_output(out_path);
    if (what == "both") {
        out << "E1,E2,prob,phase\n";
    } else {
        out << "E1,E2,value\n";
    }
    const std::vector<double> xs = grid.xs();
    const std::vector<double> ys = grid.ys();
    for (std::size_t j = 0; j < ys.size(); ++j) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const std::size_t k = j * xs.size() + i;
            out << format_value(xs[i], digits) << ',' << format_value(ys[j], digits);
            if (what == "prob") {
                out << ',' << format_value(prob[k], digits);
            } else if (what == "phase") {
                out << ',' << format_value(phase[k], digits);
            } else {
                out << ',' << format_value(prob[k], digits) << ',' << format_value(phase[k], digits);
            }
            out << '\n';
        }
    }
    return 0;
}

int cmd_wigner(const std::string& grid_text, double r, double eta_prime, const std::string& d1_text,
               const std::string& d2_text, const std::string& mode, int cutoff_opt,
               const std::string& out_path) {
    if (mode != "analytic" && mode != "numeric") throw UsageError("--mode must be analytic|numeric");
    if (r < 0.0 || eta_prime < 0.0) throw UsageError("--r and --eta-prime must be >= 0");
    const analysis::Grid2D grid = to_grid(parse_grid(grid_text));
    const analysis::WignerSlice slice(parse_angle(d1_text), parse_angle(d2_text));

    std::vector<double> values;
    if (mode == "analytic") {
        values = analysis::wigner_vortex_analytic(r, eta_prime, slice, grid);
    } else {
        const int cutoff = cutoff_opt > 0 ? cutoff_opt : gaussian::default_cutoff(r) + 8;
        const fock::PureState state = chip::make_cv_vortex(r, eta_prime, 0, cutoff);
        const c64 e1 = std::polar(1.0, slice.delta1);
        const c64 e2 = std::polar(1.0, slice.delta2);
        std::vector<std::pair<c64, c64>> points;
        points.reserve(grid.size());
        for (double v : grid.ys()) {
            for (double u : grid.xs()) {
                points.emplace_back(u * e1, v * e2);
            }
        }
        values = analysis::wigner_numeric(state, points);
    }

    const int digits = output_digits();
    std::ofstream out = open_output(out_path);
    out << "a1,a2,W\n";
    const std::vector<double> xs = grid.xs();
    const std::vector<double> ys = grid.ys();
    for (std::size_t j = 0; j < ys.size(); ++j) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            out << format_value(xs[i], digits) << ',' << format_value(ys[j], digits) << ','
                << format_value(values[j * xs.size() + i], digits) << '\n';
        }
    }
    return 0;
}

int cmd_entanglement(const std::string& sweep_text, const std::string& phi_text, bool ratio,
                     bool numeric_check, int cutoff_opt, const std::string& out_path) {
    // --sweep r=min:max:steps
    if (sweep_text.rfind("r=", 0) != 0) throw UsageError("--sweep must look like r=min:max:steps");
    AxisSpec axis;
    {
        const auto parsed = parse_grid(sweep_text.substr(2));
        axis = parsed.first;
    }
    std::vector<double> phis;
    {
        std::istringstream is(phi_text);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            if (!tok.empty()) phis.push_back(parse_angle(tok));
        }
        if (phis.empty()) throw UsageError("--phi needs a comma-separated list");
    }
    const int cutoff = cutoff_opt > 0 ? cutoff_opt : 32;

    const int digits = output_digits();
    std::ofstream out = open_output(out_path);
    out << "r,Phi,E_analytic";
    if (numeric_check) out << ",E_numeric";
    if (ratio) out << ",ratio";
    out << '\n';

    const double step = (axis.hi - axis.lo) / (axis.steps - 1);
    for (int i = 0; i < axis.steps; ++i) {
        const double r = axis.lo + step * i;
        for (double phi : phis) {
            out << format_value(r, digits) << ',' << format_value(phi, digits) << ','
                << format_value(analysis::logneg_analytic(r, phi), digits);
            if (numeric_check) {
                const double lam = r * std::sin(2.0 * phi);
                fock::PureState st = fock::make_fock_state(2, cutoff, {1, 0});
                if (lam != 0.0) {
                    st = gaussian::apply_two_mode_squeeze(st, 0, 1, gaussian::SqueezeParam(lam, 0.0),
                                                          true);
                }
                out << ',' << format_value(analysis::logneg_numeric(st).log_negativity, digits);
            }
            if (ratio) {
                out << ',';
                if (r > 0.0) out << format_value(analysis::entanglement_ratio(r, phi), digits);
            }
            out << '\n';
        }
    }
    return 0;
}

struct ChipConfig {
    chip::VortexParams params;
    int cutoff = 0;
    int herald = 3;
    bool first_order = false;
};

ChipConfig parse_chip_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    ChipConfig cfg;
    bool have_eta = false, have_t2 = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config line " + std::to_string(line_no) + ": expected key=value");
        }
        const std::string key = line.substr(0, eq);
        const std::string val = line.substr(eq + 1);
        if (key == "r") {
            cfg.params.r = std::stod(val);
        } else if (key == "theta_s") {
            cfg.params.theta_s = parse_angle(val);
        } else if (key == "eta") {
            cfg.params.eta = std::stod(val);
            have_eta = true;
        } else if (key == "phi1") {
            cfg.params.phi1 = parse_angle(val);
        } else if (key == "phi2") {
            cfg.params.phi2 = parse_angle(val);
        } else if (key == "t1") {
            cfg.params.t1 = std::stod(val);
        } else if (key == "t2") {
            cfg.params.t2 = std::stod(val);
            have_t2 = true;
        } else if (key == "cutoff") {
            cfg.cutoff = std::stoi(val);
        } else if (key == "herald") {
            cfg.herald = std::stoi(val);
            if (cfg.herald != 3 && cfg.herald != 4) {
                throw UsageError("config: herald must be 3 or 4");
            }
        } else if (key == "order") {
            if (val == "exact") {
                cfg.first_order = false;
            } else if (val == "first") {
                cfg.first_order = true;
            } else {
                throw UsageError("config: order must be exact or first");
            }
        } else {
            throw UsageError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    if (have_eta && have_t2) {
        throw UsageError("config: give either eta or t2, not both");
    }
    if (have_t2) {
        // asymmetry follows from the taps
        const double r1 = std::sqrt(1.0 - cfg.params.t1 * cfg.params.t1);
        const double r2 = std::sqrt(1.0 - cfg.params.t2 * cfg.params.t2);
        if (r1 == 0.0) throw UsageError("config: t1 = 1 leaves no tapped light");
        cfg.params.eta = (r2 * cfg.params.t1) / (r1 * cfg.params.t2);
    } else {
        // tap 2 follows from the requested asymmetry: r2/t2 = eta r1/t1
        const double ratio = cfg.params.eta * std::sqrt(1.0 - cfg.params.t1 * cfg.params.t1) /
                             cfg.params.t1;
        cfg.params.t2 = 1.0 / std::sqrt(1.0 + ratio * ratio);
    }
    cfg.params.validate();
    // the odd-ladder content of the heralded target wants headroom past the rule
    if (cfg.cutoff <= 0) cfg.cutoff = gaussian::default_cutoff(cfg.params.r) + 8;
    return cfg;
}

json amplitude_list(const fock::PureState& state, double threshold) {
    json arr = json::array();
    std::vector<int> occ(static_cast<std::size_t>(state.modes()), 0);
    std::span<const c64> amps = state.amplitudes();
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (std::abs(amps[i]) > threshold) {
            json entry;
            entry["index"] = occ;
            entry["re"] = amps[i].real();
            entry["im"] = amps[i].imag();
            arr.push_back(entry);
        }
        for (int m = state.modes() - 1; m >= 0; --m) {
            if (++occ[static_cast<std::size_t>(m)] < state.dim(m)) break;
            occ[static_cast<std::size_t>(m)] = 0;
        }
    }
    return arr;
}

int cmd_chip(const std::string& config_path, const std::string& circuit_path, bool three_mode,
             const std::string& out_path) {
    const ChipConfig cfg = parse_chip_config(config_path);
    json report;

    if (three_mode) {
        const double rt = std::sqrt(1.0 - cfg.params.t1 * cfg.params.t1);
        const chip::TapParam tap{rt, cfg.params.t1};
        const chip::ThreeModeResult res =
            chip::three_mode_chip(cfg.params.r, tap, tap, tap, cfg.cutoff);
        report["p1"] = res.p1;
        report["p2"] = res.p2;
        const gaussian::SqueezeParam zeta(cfg.params.r, cfg.params.theta_s);
        const fock::PureState s0 = gaussian::squeezed_number_state(0, zeta, cfg.cutoff);
        const fock::PureState s1 = gaussian::squeezed_number_state(1, zeta, cfg.cutoff);
        json terms = json::array();
        std::vector<double> phases;
        for (int which = 0; which < 3; ++which) {
            fock::PureState basis = fock::PureState::with_cutoffs(
                {cfg.cutoff, cfg.cutoff, cfg.cutoff});
            const int d = cfg.cutoff + 1;
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    for (int k = 0; k < d; ++k) {
                        basis.data()[(static_cast<std::size_t>(i) * d + j) * d + k] =
                            (which == 0 ? s1.amplitudes()[i] : s0.amplitudes()[i]) *
                            (which == 1 ? s1.amplitudes()[j] : s0.amplitudes()[j]) *
                            (which == 2 ? s1.amplitudes()[k] : s0.amplitudes()[k]);
                    }
                }
            }
            const c64 ov = fock::inner_product(basis, res.d1_state);
            json term;
            term["magnitude"] = std::abs(ov);
            term["phase"] = std::arg(ov);
            terms.push_back(term);
            phases.push_back(std::arg(ov));
        }
        report["d1_terms"] = terms;
        report["d1_relative_phases"] = {0.0, phases[1] - phases[0], phases[2] - phases[0]};
    } else {
        fock::PureState state(1, 1);
        double leakage = 0.0;
        if (!circuit_path.empty()) {
            std::ifstream cin_file(circuit_path);
            if (!cin_file) throw UsageError("cannot open circuit file '" + circuit_path + "'");
            chip::CircuitSpec spec = chip::parse_circuit(cin_file);
            if (spec.modes != 4) spec.modes = 4; // herald stage expects the 4-mode layout
            std::vector<int> vac(4, 0);
            state = chip::simulate(spec, fock::make_fock_state(4, cfg.cutoff, vac));
            leakage = state.leakage();
        } else if (cfg.first_order) {
            state = chip::first_order_state(cfg.params, cfg.cutoff);
            leakage = state.leakage();
        } else {
            const chip::CircuitSpec spec = chip::build_vortex_chip(cfg.params);
            std::vector<int> vac(4, 0);
            state = chip::simulate(spec, fock::make_fock_state(4, cfg.cutoff, vac));
            leakage = state.leakage();
        }
        const chip::HeraldClick click =
            cfg.herald == 3 ? chip::HeraldClick::Mode3 : chip::HeraldClick::Mode4;
        auto [heralded, prob] = chip::herald_vortex(state, click);
        const fock::PureState target = chip::heralded_target(cfg.params, click, cfg.cutoff);

        report["herald_probability"] = prob;
        report["leakage"] = leakage;
        report["fidelity_vs_target"] = fock::fidelity(heralded, target);
        report["lz_expectation"] = analysis::lz_expectation(heralded);
        report["log_negativity"] = analysis::logneg_numeric(heralded).log_negativity;
        report["amplitudes"] = amplitude_list(heralded, 1e-12);
    }

    if (out_path.empty()) {
        std::cout << report.dump(2) << '\n';
    } else {
        std::ofstream out = open_output(out_path);
        out << report.dump(2) << '\n';
    }
    return 0;
}

int cmd_budget(double pair_flux, double prop_loss, double length_cm, double geo_db, double coup_db,
               double det_eff, double tap_r2, int tap_count) {
    chip::BudgetInput b;
    b.pair_flux = pair_flux;
    b.prop_loss_db_per_cm = prop_loss;
    b.length_cm = length_cm;
    b.geometric_loss_db = geo_db;
    b.coupling_loss_db = coup_db;
    b.detector_efficiency = det_eff;
    b.tap_reflectance = tap_r2;
    b.tap_count = tap_count;
    try {
        b.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const double flux = chip::heralded_flux(b);
    std::printf("%.*e s^-1 nm^-1 mW^-1\n", output_digits(), flux);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"heralded photonic vortex toolkit"};
    app.require_subcommand(1);

    // field
    auto* field = app.add_subcommand("field", "field-strength wavefunction densities");
    double f_r = 0.3, f_etap = 1.0, f_theta_s = 0.0;
    int f_n = 0, f_cutoff = 0;
    std::string f_grid = "-4:4:201", f_what = "prob", f_mode = "analytic", f_out;
    std::string f_theta_text = "0";
    field->add_option("--r", f_r, "squeeze magnitude");
    field->add_option("--eta-prime", f_etap, "ellipticity weight");
    field->add_option("--n", f_n, "parity selector");
    field->add_option("--theta-s", f_theta_text, "squeeze phase (accepts pi literals)");
    field->add_option("--grid", f_grid, "xmin:xmax:steps[,ymin:ymax:steps]");
    field->add_option("--what", f_what, "prob|phase|both");
    field->add_option("--mode", f_mode, "analytic|numeric");
    field->add_option("--cutoff", f_cutoff, "photon cutoff for the numeric path");
    field->add_option("--out", f_out, "output CSV path")->required();

    // wigner
    auto* wigner = app.add_subcommand("wigner", "two-dimensional cut of the Wigner function");
    double w_r = 0.3, w_etap = 1.0;
    int w_cutoff = 0;
    std::string w_grid = "-4:4:201", w_d1 = "pi/2", w_d2 = "0", w_mode = "analytic", w_out;
    wigner->add_option("--r", w_r, "squeeze magnitude");
    wigner->add_option("--eta-prime", w_etap, "ellipticity weight");
    wigner->add_option("--delta1", w_d1, "phase of the first amplitude");
    wigner->add_option("--delta2", w_d2, "phase of the second amplitude");
    wigner->add_option("--grid", w_grid, "signed-magnitude grid");
    wigner->add_option("--mode", w_mode, "analytic|numeric");
    wigner->add_option("--cutoff", w_cutoff, "photon cutoff for the numeric path");
    wigner->add_option("--out", w_out, "output CSV path")->required();

    // entanglement
    auto* ent = app.add_subcommand("entanglement", "log-negativity sweeps");
    std::string e_sweep = "r=0.05:1.2:24", e_phi = "pi/4", e_out;
    bool e_ratio = false, e_numeric = false;
    int e_cutoff = 0;
    ent->add_option("--sweep", e_sweep, "r=min:max:steps");
    ent->add_option("--phi", e_phi, "comma list of ellipticity angles");
    ent->add_flag("--ratio", e_ratio, "append the ratio against the two-mode squeezed baseline");
    ent->add_flag("--numeric-check", e_numeric, "append the partial-transpose value");
    ent->add_option("--cutoff", e_cutoff, "photon cutoff for the numeric check");
    ent->add_option("--out", e_out, "output CSV path")->required();

    // chip
    auto* chip_cmd = app.add_subcommand("chip", "simulate the heralding pipeline");
    std::string c_config, c_circuit, c_out;
    bool c_three = false;
    chip_cmd->add_option("--config", c_config, "key=value configuration file")->required();
    chip_cmd->add_option("--circuit", c_circuit, "explicit circuit file (overrides the built-in layout)");
    chip_cmd->add_flag("--three-mode", c_three, "run the seven-mode nesting pipeline");
    chip_cmd->add_option("--out", c_out, "output JSON path (stdout when omitted)");

    // budget
    auto* budget = app.add_subcommand("budget", "heralded-rate estimate");
    double b_flux = 1.4e7, b_prop = 0.3, b_len = 5.0, b_geo = 1.0, b_coup = 1.0, b_det = 0.1,
           b_tap = 0.01;
    int b_count = 2;
    budget->add_option("--pair-flux", b_flux, "pairs per nm mW s");
    budget->add_option("--prop-loss-db-per-cm", b_prop, "propagation loss");
    budget->add_option("--length-cm", b_len, "chip length");
    budget->add_option("--geometric-loss-db", b_geo, "bend losses");
    budget->add_option("--coupling-loss-db", b_coup, "output coupling loss");
    budget->add_option("--det-eff", b_det, "detector efficiency");
    budget->add_option("--tap-r2", b_tap, "tap reflectance r^2");
    budget->add_option("--tap-count", b_count, "number of tapped arms");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends
            return app.exit(e);
        }
        std::cerr << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (field->parsed()) {
            const double theta_s = parse_angle(f_theta_text);
            return cmd_field(f_grid, f_r, f_etap, f_n, theta_s, f_what, f_mode, f_cutoff, f_out);
        }
        if (wigner->parsed()) {
            return cmd_wigner(w_grid, w_r, w_etap, w_d1, w_d2, w_mode, w_cutoff, w_out);
        }
        if (ent->parsed()) {
            return cmd_entanglement(e_sweep, e_phi, e_ratio, e_numeric, e_cutoff, e_out);
        }
        if (chip_cmd->parsed()) {
            return cmd_chip(c_config, c_circuit, c_three, c_out);
        }
        if (budget->parsed()) {
            return cmd_budget(b_flux, b_prop, b_len, b_geo, b_coup, b_det, b_tap, b_count);
        }
    } catch (const UsageError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const ImpossibleHeraldError& e) {
        std::cerr << e.what() << '\n';
        return kExitImpossibleHerald;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
    return 0;
}
