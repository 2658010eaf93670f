#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <vector>

#include "vortexlab/fock.hpp"

namespace vortexlab::analysis {

using fock::PureState;
using fock::c64;

/// Rectangular evaluation grid; values are laid out row-major with the y axis
/// outermost.
struct Grid2D {
    double x_min = -4.0, x_max = 4.0;
    int x_steps = 201;
    double y_min = -4.0, y_max = 4.0;
    int y_steps = 201;

    void validate() const;
    std::vector<double> xs() const;
    std::vector<double> ys() const;
    std::size_t size() const { return static_cast<std::size_t>(x_steps) * y_steps; }
};

/// Two-dimensional cut of the four-dimensional Wigner function: the complex
/// amplitudes are alpha_j = u e^{i delta_1}, v e^{i delta_2} with signed grid
/// coordinates (u, v).
struct WignerSlice {
    double delta1 = std::numbers::pi / 2.0;
    double delta2 = 0.0;

    WignerSlice() = default;
    WignerSlice(double d1, double d2);
};

struct EntanglementReport {
    double log_negativity = 0.0;       // log2(1 + 2N) from the partial transpose
    double negativity = 0.0;           // |sum of negative PT eigenvalues|
    std::vector<double> schmidt_coefficients;
    double schmidt_log_negativity = 0.0; // 2 log2(sum of Schmidt coefficients)
    std::optional<double> ratio_to_tmsv;
};

/// Normalized harmonic-oscillator eigenfunctions psi_0..psi_nmax at x, by the
/// stable two-term recurrence.
std::vector<double> hermite_functions(int nmax, double x);

/// Psi(E1,E2) = sum c_nm psi_n(E1) psi_m(E2) for a two-mode state.
std::vector<c64> field_wavefunction(const PureState& state, const Grid2D& grid);

/// Closed-form two-term vortex wavefunction for real squeezing:
/// sqrt(2/(pi (1+eta'^2) e^{4r})) (E1 + (-1)^n i eta' E2) exp(-(E1^2+E2^2)/(2 e^{2r})).
std::vector<c64> vortex_wavefunction_analytic(double r, double eta_prime, int n, const Grid2D& grid);

/// Elementwise |Psi|^2 and arg Psi in (-pi, pi]; the phase is NaN where the
/// field vanishes exactly.
std::pair<std::vector<double>, std::vector<double>> density_and_phase(const std::vector<c64>& field);

/// Closed-form Wigner function of the circular/elliptical two-term state
/// (even parity branch) on a slice, for real squeezing; evaluated at
/// alpha~_j = alpha_j cosh r - alpha_j* sinh r.
std::vector<double> wigner_vortex_analytic(double r, double eta_prime, const WignerSlice& slice,
                                           const Grid2D& grid);
double wigner_vortex_analytic_at(double r, double eta_prime, c64 alpha1, c64 alpha2);

/// Displaced-parity evaluation (2/pi)^2 <psi|D(alpha) Pi D†(alpha)|psi> of an
/// arbitrary two-mode state; exact on the truncated state.
std::vector<double> wigner_numeric(const PureState& state,
                                   const std::vector<std::pair<c64, c64>>& points);
double wigner_numeric_at(const PureState& state, c64 alpha1, c64 alpha2);

/// Negative-region test |a1 e^r|^2 + eta'^2 |a2 e^-r|^2
/// - 2 eta' a1 a2 sin(d1-d2) < (1+eta'^2)/4 with signed magnitudes a1, a2.
/// Exact on the slice family delta1 in {±pi/2}, delta2 in {0, pi} (and
/// everywhere at r = 0).
bool negativity_predicate(double r, double eta_prime, double a1, double a2, double delta1,
                          double delta2);

/// <-i(a1† a2 - a1 a2†)> (real).
double lz_expectation(const PureState& state);

struct CountingMeasurement {
    std::map<int, double> distribution; // photon-number difference -> probability
    double mean = 0.0;
};

/// Balanced-coupler counting scheme: distribution of n1' - n2' after a 3 dB
/// coupler; its mean equals lz_expectation of the input.
CountingMeasurement lz_counting_measurement(const PureState& state);

/// Partial transpose of |psi><psi| on mode 2, Hermitian eigenvalues,
/// N = |sum of negative ones|, E = log2(1+2N); also carries the Schmidt
/// coefficients for the pure-state cross-check.
EntanglementReport logneg_numeric(const PureState& state);

/// Closed-form log-negativity of the two-term vortex family:
/// 2 log2[cosh^-2(lam) (1 + sum sqrt(n+1) |tanh^n(lam)|)], lam = r sin(2 Phi).
double logneg_analytic(double r, double Phi);

/// Coefficients sqrt(n+1) tanh^n(lam)/cosh^2(lam), lam = r sin(2 Phi).
std::vector<double> schmidt_coeffs_analytic(double r, double Phi, int count);

/// (sum_n c_n(r,Phi) e^{-r})^2, the log-negativity ratio against the
/// equally-squeezed two-mode squeezed vacuum; 0 when the state is separable
/// (sin 2Phi = 0).  r = 0 is undefined.
double entanglement_ratio(double r, double Phi);

/// Passive rotation into the circular/elliptical mode basis
/// b1 = cos(Phi) a1 - i e^{i n pi} sin(Phi) a2,
/// b2 = sin(Phi) a1 + i e^{i n pi} cos(Phi) a2.
PureState elliptical_basis_rotate(const PureState& state, double Phi, int n);

/// C± = 1 ± eta tan(phi2/2) e^{-i phi1}; the coherent-branch weights of the
/// heralded state.  phi2 = pi is singular.
std::pair<c64, c64> cat_coefficients(double eta, double phi1, double phi2);

/// Coherent state truncated at the cutoff, renormalized.
PureState coherent_state(c64 alpha, int cutoff);

/// Even/odd coherent superposition (|alpha> ± |-alpha>), normalized, in Fock
/// space at the given cutoff.
PureState cat_state(double alpha, bool even, int cutoff);

struct KittenFit {
    double alpha_star = 0.0;
    double fidelity = 0.0;
};

/// Best coherent-superposition match to a squeezed number state: maximizes
/// |<cat±(alpha)|n_z>|^2 over alpha in [0, 3] by golden-section search.
KittenFit kitten_fidelity(double r, bool even_parity);

} // namespace vortexlab::analysis
