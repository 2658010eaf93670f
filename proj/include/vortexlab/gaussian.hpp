#pragma once

#include <complex>

#include "vortexlab/fock.hpp"

namespace vortexlab::gaussian {

using fock::PureState;
using fock::c64;

/// Leakage bound enforced by squeezers unless the caller overrides.
inline constexpr double kLeakageTol = 1e-8;

/// Default per-mode cutoff for squeezed content: ceil(10 + 20 r).
int default_cutoff(double r_max);

/// Complex squeezing parameter zeta = r e^{i theta_s}.
struct SqueezeParam {
    double r = 0.0;
    double theta_s = 0.0; // reduced to (-pi, pi]

    SqueezeParam() = default;
    SqueezeParam(double r_in, double theta_in);
    c64 zeta() const { return std::polar(r, theta_s); }
};

/// Directional coupler angle with derived t = cos(theta/2), r = sin(theta/2).
struct CouplerParam {
    double theta = 0.0;

    CouplerParam() = default;
    explicit CouplerParam(double theta_in) : theta(theta_in) {}
    static CouplerParam from_transmittivity(double t);
    double t() const { return std::cos(theta / 2.0); }
    double r() const { return std::sin(theta / 2.0); }
};

/// exp{(zeta a†² - zeta* a²)/2} on one mode, via a dense matrix exponential
/// built on a padded space and cropped to the state's cutoff.  Records
/// leakage = 1 - (post-application norm²) and renormalizes.
PureState apply_squeeze(const PureState& state, int mode, const SqueezeParam& zeta,
                        bool override_leakage = false);

enum class TwoModeSqueezeMethod { Factored, DenseExponential };

/// exp{zeta a_j† a_l† - zeta* a_j a_l}.  The factored route applies the exact
/// raise/diagonal/lower product; the dense route exponentiates the pair-space
/// generator (testing aid, small cutoffs only).  Leakage policy as
/// apply_squeeze.
PureState apply_two_mode_squeeze(const PureState& state, int mode_j, int mode_l,
                                 const SqueezeParam& zeta, bool override_leakage = false,
                                 TwoModeSqueezeMethod method = TwoModeSqueezeMethod::Factored);

/// exp{-i(theta/2)(a_j a_l† + a_j† a_l)}; photon-number conserving and exactly
/// norm-preserving.
PureState apply_coupler(const PureState& state, int mode_j, int mode_l, double theta);

/// Multiplies each amplitude by e^{i phi n_mode}.
PureState apply_phase(const PureState& state, int mode, double phi);

/// Programmable U(2): a_j† -> e^{+i phi1/2}[cos(phi2/2) a_j† + sin(phi2/2) a_l†],
/// a_l† -> e^{-i phi1/2}[-sin(phi2/2) a_j† + cos(phi2/2) a_l†].
PureState apply_mzi(const PureState& state, int mode_j, int mode_l, double phi1, double phi2);

/// Symmetric junction: annihilation operators mix by (1/sqrt2)[[1,-1],[1,1]]
/// (unitary idealization; radiation loss is not modeled).
PureState apply_y_junction(const PureState& state, int mode_j, int mode_l);

/// exp(i H̃) for the quadratic generator H̃ = h00 n_j + h11 n_l
/// + h01 a_j† a_l + h01* a_l† a_j, applied block-diagonally over the conserved
/// pair photon number.  Annihilation operators transform as a -> e^{iH} a with
/// H = [[h00, h01], [h01*, h11]].
PureState apply_passive_u2(const PureState& state, int mode_j, int mode_l,
                           double h00, c64 h01, double h11);

/// Single-mode squeezed vacuum |0_z> (n = 0) or squeezed single photon |1_z>
/// (n = 1) from the closed-form even/odd amplitude ladder; truncated,
/// renormalized, leakage policy as apply_squeeze.
PureState squeezed_number_state(int n, const SqueezeParam& zeta, int cutoff,
                                bool override_leakage = false);

} // namespace vortexlab::gaussian
