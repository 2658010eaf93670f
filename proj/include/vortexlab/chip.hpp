#pragma once

#include <cmath>
#include <iosfwd>
#include <numbers>
#include <string>
#include <vector>

#include "vortexlab/fock.hpp"
#include "vortexlab/gaussian.hpp"

namespace vortexlab::chip {

using fock::PureState;
using fock::c64;
using gaussian::SqueezeParam;

/// Every dial of the device and of the targeted two-term superposition.
struct VortexParams {
    double r = 0.3;        // squeeze magnitude
    double theta_s = 0.0;  // squeeze phase
    double eta = 1.0;      // tap asymmetry r2 t1 / (r1 t2)
    double phi1 = std::numbers::pi / 2.0;
    double phi2 = std::numbers::pi / 2.0;
    int n = 0;             // parity selector in (-1)^n
    double t1 = 0.995;     // tap transmittivities
    double t2 = 0.995;

    VortexParams() = default;
    void validate() const;

    double eta_prime() const { return eta * std::tan(phi2 / 2.0); }
    double Phi() const { return std::atan(eta_prime()); }
};

/// Ordered circuit description; element order is execution order.
struct CircuitElement {
    enum class Kind { Squeeze, Coupler, Phase, Mzi, YJunction };
    Kind kind;
    int mode_a = 0;  // 0-based
    int mode_b = 0;  // unused for single-mode elements
    double p0 = 0.0; // squeeze r / coupler theta / phase phi / mzi phi1
    double p1 = 0.0; // squeeze theta_s / mzi phi2
};

struct CircuitSpec {
    int modes = 0;
    std::vector<CircuitElement> elements;

    void validate() const;
};

/// One element per line: `squeeze M R THETA`, `coupler J L THETA`,
/// `phase M PHI`, `mzi J L PHI1 PHI2`, `yjunction J L`.  Mode numbers are
/// 1-based in the text form.
std::string format_circuit(const CircuitSpec& spec);
CircuitSpec parse_circuit(std::istream& in);
CircuitSpec parse_circuit_string(const std::string& text);

/// Inputs for the heralded-rate budget.
struct BudgetInput {
    double pair_flux = 1.4e7;       // pairs / (nm mW s)
    double prop_loss_db_per_cm = 0.3;
    double length_cm = 5.0;
    double geometric_loss_db = 1.0;
    double coupling_loss_db = 1.0;
    double detector_efficiency = 0.1;
    double tap_reflectance = 0.01;  // r^2 per weak coupler
    int tap_count = 2;

    void validate() const;
};

/// Four-mode circuit: squeeze modes 0,1; weak taps (0,2) and (1,3); U(2) on
/// the tapped pair.
CircuitSpec build_vortex_chip(const VortexParams& params);

/// Left-fold of the gate set over the elements; squeeze leakage accumulates.
PureState simulate(const CircuitSpec& spec, const PureState& input, bool override_leakage = false);

/// (1 - i(r1/t1) a_0 a_2†)(1 - i(r2/t2) a_1 a_3†)|0_z 0_z 0 0> followed by the
/// U(2) stage, normalized.  Valid for high transmittivities.
PureState first_order_state(const VortexParams& params, int cutoff);

enum class HeraldClick { Mode3, Mode4 };

/// Projects the ancilla pair onto <1 0| or <0 1|; returns the renormalized
/// two-mode state and the herald probability.
std::pair<PureState, double> herald_vortex(const PureState& state, HeraldClick click);

/// General two-term superposition (|1_z 0_z> + w |0_z 1_z>)/sqrt(1+|w|^2).
PureState two_term_vortex(const SqueezeParam& zeta, c64 weight, int cutoff);

/// The two-term target the herald aims at:
/// (|1_z 0_z> + w |0_z 1_z>)/sqrt(1+|w|^2) with w = -eta tan(phi2/2) e^{-i phi1}
/// for a mode-3 click and w = +eta cot(phi2/2) e^{-i phi1} for mode 4.
PureState heralded_target(const VortexParams& params, HeraldClick click, int cutoff);

/// (|1_z 0_z> + (-1)^n i eta' |0_z 1_z>)/sqrt(1+eta'^2), zeta = r (real).
PureState make_cv_vortex(double r, double eta_prime, int n, int cutoff);

/// Single-photon counterpart (|10> + w|01>)/sqrt(1+eta'^2),
/// w = (-1)^(n+1) eta' e^{-i phi1}.
PureState make_dv_vortex(double eta_prime, double phi1, int n, int cutoff = 1);

/// Low-pump-power input (|0> + e^{i theta_s} tanh(r)/sqrt2 |2>), renormalized
/// after truncation.  Warns on stderr when r > 0.5.
PureState dv_regime_input(double r, double theta_s, int cutoff = 2);

struct ThreeModeResult {
    PureState d1_state;  // three source modes after a D1 click
    PureState d2_state;
    double p1 = 0.0;
    double p2 = 0.0;
};

struct TapParam {
    double r = 0.0;
    double t = 1.0;
};

/// Seven-mode nesting: three squeezed sources, four weak taps, a 3 dB
/// combiner tree, single clicks at the two central detectors.
ThreeModeResult three_mode_chip(double r, const TapParam& tap1, const TapParam& tap2,
                                const TapParam& tap3, int cutoff);

/// First-order quasi-phase-matching period 2*pi / (beta_p - beta_s - beta_i).
double qpm_period(double beta_p, double beta_s, double beta_i);

/// Electro-optic phase n^3 r V pi L_E / (lambda d).
double eo_phase(double n, double r_eo, double voltage, double electrode_length,
                double wavelength, double gap);

/// Usable heralded-state rate: source flux x tap probability x transmission x
/// detector efficiency.
double heralded_flux(const BudgetInput& b);

} // namespace vortexlab::chip
