#include "vortexlab/chip.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

namespace vortexlab::chip {

using gaussian::CouplerParam;

void VortexParams::validate() const {
    if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("VortexParams: bad r");
    if (!(eta > 0.0)) throw std::invalid_argument("VortexParams: eta must be positive");
    if (!(t1 > 0.0 && t1 <= 1.0) || !(t2 > 0.0 && t2 <= 1.0)) {
        throw std::invalid_argument("VortexParams: transmittivities must be in (0,1]");
    }
}

void CircuitSpec::validate() const {
    if (modes < 1) throw ShapeError("CircuitSpec: modes must be positive");
    for (const CircuitElement& e : elements) {
        const bool two_mode = e.kind == CircuitElement::Kind::Coupler ||
                              e.kind == CircuitElement::Kind::Mzi ||
                              e.kind == CircuitElement::Kind::YJunction;
        if (e.mode_a < 0 || e.mode_a >= modes) {
            throw ShapeError("CircuitSpec: element references mode " + std::to_string(e.mode_a));
        }
        if (two_mode) {
            if (e.mode_b < 0 || e.mode_b >= modes || e.mode_b == e.mode_a) {
                throw ShapeError("CircuitSpec: element needs two distinct modes");
            }
        }
    }
}

std::string format_circuit(const CircuitSpec& spec) {
    std::ostringstream os;
    os.precision(17);
    for (const CircuitElement& e : spec.elements) {
        switch (e.kind) {
            case CircuitElement::Kind::Squeeze:
                os << "squeeze " << e.mode_a + 1 << " " << e.p0 << " " << e.p1 << "\n";
                break;
            case CircuitElement::Kind::Coupler:
                os << "coupler " << e.mode_a + 1 << " " << e.mode_b + 1 << " " << e.p0 << "\n";
                break;
            case CircuitElement::Kind::Phase:
                os << "phase " << e.mode_a + 1 << " " << e.p0 << "\n";
                break;
            case CircuitElement::Kind::Mzi:
                os << "mzi " << e.mode_a + 1 << " " << e.mode_b + 1 << " " << e.p0 << " " << e.p1
                   << "\n";
                break;
            case CircuitElement::Kind::YJunction:
                os << "yjunction " << e.mode_a + 1 << " " << e.mode_b + 1 << "\n";
                break;
        }
    }
    return os.str();
}

CircuitSpec parse_circuit(std::istream& in) {
    CircuitSpec spec;
    std::string line;
    int line_no = 0;
    int max_mode = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;

        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("circuit line " + std::to_string(line_no) + ": " + why);
        };
        auto read_mode = [&]() {
            int m;
            if (!(ls >> m) || m < 1) fail("expected a 1-based mode number");
            max_mode = std::max(max_mode, m);
            return m - 1;
        };
        auto read_num = [&]() {
            double v;
            if (!(ls >> v)) fail("expected a number");
            return v;
        };

        CircuitElement e{};
        if (word == "squeeze") {
            e.kind = CircuitElement::Kind::Squeeze;
            e.mode_a = read_mode();
            e.p0 = read_num();
            e.p1 = read_num();
        } else if (word == "coupler") {
            e.kind = CircuitElement::Kind::Coupler;
            e.mode_a = read_mode();
            e.mode_b = read_mode();
            e.p0 = read_num();
        } else if (word == "phase") {
            e.kind = CircuitElement::Kind::Phase;
            e.mode_a = read_mode();
            e.p0 = read_num();
        } else if (word == "mzi") {
            e.kind = CircuitElement::Kind::Mzi;
            e.mode_a = read_mode();
            e.mode_b = read_mode();
            e.p0 = read_num();
            e.p1 = read_num();
        } else if (word == "yjunction") {
            e.kind = CircuitElement::Kind::YJunction;
            e.mode_a = read_mode();
            e.mode_b = read_mode();
        } else {
            fail("unknown element '" + word + "'");
        }
        std::string extra;
        if (ls >> extra) fail("trailing tokens");
        spec.elements.push_back(e);
    }
    spec.modes = max_mode;
    spec.validate();
    return spec;
}

CircuitSpec parse_circuit_string(const std::string& text) {
    std::istringstream is(text);
    return parse_circuit(is);
}

void BudgetInput::validate() const {
    const double vals[] = {pair_flux, prop_loss_db_per_cm, length_cm, geometric_loss_db,
                           coupling_loss_db, detector_efficiency, tap_reflectance,
                           static_cast<double>(tap_count)};
    for (double v : vals) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("BudgetInput: all entries must be non-negative");
        }
    }
    if (detector_efficiency > 1.0) {
        throw std::invalid_argument("BudgetInput: detector efficiency must be <= 1");
    }
}

CircuitSpec build_vortex_chip(const VortexParams& params) {
    params.validate();
    CircuitSpec spec;
    spec.modes = 4;
    const double theta1 = 2.0 * std::asin(std::sqrt(1.0 - params.t1 * params.t1));
    const double theta2 = 2.0 * std::asin(std::sqrt(1.0 - params.t2 * params.t2));
    spec.elements = {
        {CircuitElement::Kind::Squeeze, 0, 0, params.r, params.theta_s},
        {CircuitElement::Kind::Squeeze, 1, 0, params.r, params.theta_s},
        {CircuitElement::Kind::Coupler, 0, 2, theta1, 0.0},
        {CircuitElement::Kind::Coupler, 1, 3, theta2, 0.0},
        {CircuitElement::Kind::Mzi, 2, 3, params.phi1, params.phi2},
    };
    return spec;
}

PureState simulate(const CircuitSpec& spec, const PureState& input, bool override_leakage) {
    spec.validate();
    if (input.modes() != spec.modes) {
        throw ShapeError("simulate: input mode count does not match circuit");
    }
    PureState state = input;
    double leakage = state.leakage();
    for (const CircuitElement& e : spec.elements) {
        switch (e.kind) {
            case CircuitElement::Kind::Squeeze:
                state = gaussian::apply_squeeze(state, e.mode_a, SqueezeParam(e.p0, e.p1),
                                                override_leakage);
                leakage += state.leakage();
                break;
            case CircuitElement::Kind::Coupler:
                state = gaussian::apply_coupler(state, e.mode_a, e.mode_b, e.p0);
                break;
            case CircuitElement::Kind::Phase:
                state = gaussian::apply_phase(state, e.mode_a, e.p0);
                break;
            case CircuitElement::Kind::Mzi:
                state = gaussian::apply_mzi(state, e.mode_a, e.mode_b, e.p0, e.p1);
                break;
            case CircuitElement::Kind::YJunction:
                state = gaussian::apply_y_junction(state, e.mode_a, e.mode_b);
                break;
        }
    }
    state.set_leakage(leakage);
    return state;
}

PureState first_order_state(const VortexParams& params, int cutoff) {
    params.validate();
    if (params.t1 < 0.9 || params.t2 < 0.9) {
        throw std::invalid_argument("first_order_state: taps must have t >= 0.9");
    }
    const SqueezeParam zeta(params.r, params.theta_s);
    const PureState sub0 = gaussian::squeezed_number_state(0, zeta, cutoff);

    PureState state = PureState::with_cutoffs({cutoff, cutoff, cutoff, cutoff});
    {
        // |0_z 0_z 0 0>
        std::span<c64> amps = state.amplitudes();
        std::span<const c64> a0 = sub0.amplitudes();
        const std::size_t s0 = state.stride(0);
        const std::size_t s1 = state.stride(1);
        for (int n0 = 0; n0 <= cutoff; ++n0) {
            for (int n1 = 0; n1 <= cutoff; ++n1) {
                amps[static_cast<std::size_t>(n0) * s0 + static_cast<std::size_t>(n1) * s1] =
                    a0[static_cast<std::size_t>(n0)] * a0[static_cast<std::size_t>(n1)];
            }
        }
    }

    const double rt1 = std::sqrt(1.0 - params.t1 * params.t1) / params.t1;
    const double rt2 = std::sqrt(1.0 - params.t2 * params.t2) / params.t2;
    const c64 mi{0.0, -1.0};

    auto tap_term = [](const PureState& s, int src, int anc) {
        return fock::apply_ladder(fock::apply_ladder(s, src, fock::Ladder::Annihilate), anc,
                                  fock::Ladder::Create);
    };

    // (1 - i rt1 a_0 a_2†)(1 - i rt2 a_1 a_3†) |...>
    PureState t2term = tap_term(state, 1, 3);
    PureState acc = state;
    std::span<c64> pa = acc.amplitudes();
    {
        std::span<const c64> pt = t2term.amplitudes();
        for (std::size_t i = 0; i < pa.size(); ++i) pa[i] += mi * rt2 * pt[i];
    }
    PureState t1term = tap_term(acc, 0, 2);
    {
        std::span<const c64> pt = t1term.amplitudes();
        for (std::size_t i = 0; i < pa.size(); ++i) pa[i] += mi * rt1 * pt[i];
    }

    acc = gaussian::apply_mzi(acc, 2, 3, params.phi1, params.phi2);
    acc.normalize();
    acc.set_leakage(sub0.leakage());
    return acc;
}

std::pair<PureState, double> herald_vortex(const PureState& state, HeraldClick click) {
    if (state.modes() != 4) throw ShapeError("herald_vortex: expected a 4-mode state");
    fock::HeraldPattern pattern;
    if (click == HeraldClick::Mode3) {
        pattern.assignments = {{2, 1}, {3, 0}};
    } else {
        pattern.assignments = {{2, 0}, {3, 1}};
    }
    return fock::project_pattern(state, pattern);
}

PureState two_term_vortex(const SqueezeParam& zeta, c64 weight, int cutoff) {
    const PureState s0 = gaussian::squeezed_number_state(0, zeta, cutoff);
    const PureState s1 = gaussian::squeezed_number_state(1, zeta, cutoff);
    PureState out(2, cutoff);
    std::span<c64> amps = out.amplitudes();
    std::span<const c64> a0 = s0.amplitudes();
    std::span<const c64> a1 = s1.amplitudes();
    const double norm = std::sqrt(1.0 + std::norm(weight));
    const std::size_t d = static_cast<std::size_t>(cutoff) + 1;
    for (std::size_t n0 = 0; n0 < d; ++n0) {
        for (std::size_t n1 = 0; n1 < d; ++n1) {
            amps[n0 * d + n1] = (a1[n0] * a0[n1] + weight * a0[n0] * a1[n1]) / norm;
        }
    }
    out.normalize();
    out.set_leakage(std::max(s0.leakage(), s1.leakage()));
    return out;
}

PureState heralded_target(const VortexParams& params, HeraldClick click, int cutoff) {
    params.validate();
    const c64 phase = std::polar(1.0, -params.phi1);
    c64 w;
    if (click == HeraldClick::Mode3) {
        w = -params.eta * std::tan(params.phi2 / 2.0) * phase;
    } else {
        w = params.eta / std::tan(params.phi2 / 2.0) * phase;
    }
    return two_term_vortex(SqueezeParam(params.r, params.theta_s), w, cutoff);
}

PureState make_cv_vortex(double r, double eta_prime, int n, int cutoff) {
    if (r < 0.0 || eta_prime < 0.0) {
        throw std::invalid_argument("make_cv_vortex: r and eta' must be >= 0");
    }
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return two_term_vortex(SqueezeParam(r, 0.0), c64{0.0, sign * eta_prime}, cutoff);
}

PureState make_dv_vortex(double eta_prime, double phi1, int n, int cutoff) {
    if (eta_prime < 0.0) throw std::invalid_argument("make_dv_vortex: eta' must be >= 0");
    const double sign = (n % 2 == 0) ? -1.0 : 1.0;
    const c64 w = sign * eta_prime * std::polar(1.0, -phi1);
    PureState out(2, cutoff);
    const double norm = std::sqrt(1.0 + std::norm(w));
    std::vector<int> occ10 = {1, 0}, occ01 = {0, 1};
    out.data()[out.index_of(occ10)] = 1.0 / norm;
    out.data()[out.index_of(occ01)] = w / norm;
    return out;
}

PureState dv_regime_input(double r, double theta_s, int cutoff) {
    if (r < 0.0) throw std::invalid_argument("dv_regime_input: r must be >= 0");
    if (r > 0.5) {
        std::cerr << "dv_regime_input: r = " << r
                  << " is outside the low-pump regime; the two-level truncation degrades\n";
    }
    if (cutoff < 2) throw CutoffError("dv_regime_input: cutoff must be >= 2");
    PureState out(1, cutoff);
    out.data()[0] = 1.0;
    out.data()[2] = std::polar(std::tanh(r) / std::sqrt(2.0), theta_s);
    out.normalize();
    return out;
}

ThreeModeResult three_mode_chip(double r, const TapParam& tap1, const TapParam& tap2,
                                const TapParam& tap3, int cutoff) {
    for (const TapParam* tp : {&tap1, &tap2, &tap3}) {
        if (tp->t < 0.9) throw std::invalid_argument("three_mode_chip: taps must have t >= 0.9");
    }
    const SqueezeParam zeta(r, 0.0);
    const PureState sub0 = gaussian::squeezed_number_state(0, zeta, cutoff);

    // sources at the requested cutoff, ancillas at 3 photons (enough for every
    // cross term of the product)
    PureState state = PureState::with_cutoffs({cutoff, cutoff, cutoff, 3, 3, 3, 3});
    {
        std::span<c64> amps = state.amplitudes();
        std::span<const c64> a0 = sub0.amplitudes();
        const std::size_t s0 = state.stride(0), s1 = state.stride(1), s2 = state.stride(2);
        for (int n0 = 0; n0 <= cutoff; ++n0) {
            for (int n1 = 0; n1 <= cutoff; ++n1) {
                for (int n2 = 0; n2 <= cutoff; ++n2) {
                    amps[static_cast<std::size_t>(n0) * s0 + static_cast<std::size_t>(n1) * s1 +
                         static_cast<std::size_t>(n2) * s2] =
                        a0[static_cast<std::size_t>(n0)] * a0[static_cast<std::size_t>(n1)] *
                        a0[static_cast<std::size_t>(n2)];
                }
            }
        }
    }

    const c64 mi{0.0, -1.0};
    auto add_tap = [&](const PureState& s, int src, std::vector<int> ancs, double ratio) {
        // s -> (1 - i ratio a_src sum_k a_anc†)|s>
        PureState acc = s;
        std::span<c64> pa = acc.amplitudes();
        for (int anc : ancs) {
            PureState term = fock::apply_ladder(fock::apply_ladder(s, src, fock::Ladder::Annihilate),
                                                anc, fock::Ladder::Create);
            std::span<const c64> pt = term.amplitudes();
            for (std::size_t i = 0; i < pa.size(); ++i) pa[i] += mi * ratio * pt[i];
        }
        return acc;
    };

    state = add_tap(state, 2, {6}, tap3.r / tap3.t);
    state = add_tap(state, 1, {4, 5}, tap2.r / (std::sqrt(2.0) * tap2.t));
    state = add_tap(state, 0, {3}, tap1.r / tap1.t);

    // 3 dB combiner tree on the tapped modes; the two central outputs are the
    // detector modes.  The pi path phase on the last arm sets the heralded
    // branch phases to (0, pi/4, pi/2); the bare tree gives (0, pi/4, -pi/2).
    const double half = std::numbers::pi / 2.0;
    state = gaussian::apply_phase(state, 6, std::numbers::pi);
    state = gaussian::apply_coupler(state, 3, 4, half);
    state = gaussian::apply_coupler(state, 5, 6, half);
    state = gaussian::apply_coupler(state, 4, 5, half);
    state.normalize();

    ThreeModeResult res{PureState(1, 1), PureState(1, 1), 0.0, 0.0};
    fock::HeraldPattern d1;
    d1.assignments = {{3, 0}, {4, 1}, {5, 0}, {6, 0}};
    auto [s1, p1] = fock::project_pattern(state, d1);
    fock::HeraldPattern d2;
    d2.assignments = {{3, 0}, {4, 0}, {5, 1}, {6, 0}};
    auto [s2, p2] = fock::project_pattern(state, d2);
    res.d1_state = std::move(s1);
    res.d2_state = std::move(s2);
    res.p1 = p1;
    res.p2 = p2;
    return res;
}

double qpm_period(double beta_p, double beta_s, double beta_i) {
    const double mismatch = beta_p - beta_s - beta_i;
    if (!(mismatch > 0.0)) {
        throw std::domain_error("qpm_period: propagation-constant mismatch must be positive");
    }
    return 2.0 * std::numbers::pi / mismatch;
}

double eo_phase(double n, double r_eo, double voltage, double electrode_length,
                double wavelength, double gap) {
    if (!(wavelength > 0.0) || !(gap > 0.0) || electrode_length < 0.0) {
        throw std::invalid_argument("eo_phase: geometry must be positive");
    }
    return n * n * n * r_eo * voltage * std::numbers::pi * electrode_length / (wavelength * gap);
}

double heralded_flux(const BudgetInput& b) {
    b.validate();
    const double total_db =
        b.prop_loss_db_per_cm * b.length_cm + b.geometric_loss_db + b.coupling_loss_db;
    return b.pair_flux * b.detector_efficiency *
           (static_cast<double>(b.tap_count) * b.tap_reflectance) *
           std::pow(10.0, -total_db / 10.0);
}

} // namespace vortexlab::chip
