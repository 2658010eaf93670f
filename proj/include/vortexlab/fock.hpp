#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "vortexlab/errors.hpp"

namespace vortexlab::fock {

using c64 = std::complex<double>;

/// Multimode pure state on a truncated Fock space.
///
/// Amplitudes are stored row-major with mode 0 outermost: the linear index of
/// occupation (n_0, ..., n_{M-1}) is ((n_0 * d_1 + n_1) * d_2 + ...) with
/// d_m = cutoff(m) + 1.  Most states use one common cutoff; a few internal
/// pipelines (ancilla-heavy circuits) use per-mode cutoffs via with_cutoffs().
class PureState {
public:
    PureState(int modes, int cutoff);
    static PureState with_cutoffs(const std::vector<int>& cutoffs);

    int modes() const { return static_cast<int>(dims_.size()); }
    /// Largest per-mode cutoff (the common cutoff for uniform states).
    int cutoff() const;
    int cutoff(int mode) const { return dim(mode) - 1; }
    int dim(int mode) const;
    bool uniform() const;

    std::size_t size() const { return amps_.size(); }
    std::span<const c64> amplitudes() const { return amps_; }
    std::span<c64> amplitudes() { return amps_; }
    const c64* data() const { return amps_.data(); }
    c64* data() { return amps_.data(); }

    /// Linear index of an occupation tuple (bounds-checked).
    std::size_t index_of(std::span<const int> occupation) const;
    c64 amplitude(std::span<const int> occupation) const;
    /// Distance in the linear index between consecutive levels of `mode`.
    std::size_t stride(int mode) const;

    double norm_sqr() const;
    /// Scales amplitudes to unit norm; returns the norm that was divided out.
    double normalize();

    double leakage() const { return leakage_; }
    void set_leakage(double l) { leakage_ = l; }
    void add_leakage(double l) { leakage_ += l; }

    /// Same content placed in a space with a larger uniform cutoff.
    PureState padded(int new_cutoff) const;

private:
    std::vector<int> dims_;
    std::vector<c64> amps_;
    double leakage_ = 0.0;
};

/// Post-selection pattern: photon counts pinned on a subset of modes.
struct HeraldPattern {
    std::vector<std::pair<int, int>> assignments; // (mode, count)

    void validate(const PureState& state) const;
};

/// Hermitian matrix with unit trace (when it represents a normalized state).
struct DensityMatrix {
    int dim = 0;
    std::vector<c64> entries; // row-major dim x dim

    c64 at(int r, int c) const { return entries[static_cast<std::size_t>(r) * dim + c]; }
    double trace() const;
    double purity() const; // Tr rho^2
};

/// Singular-value form of a bipartite pure state.
struct SchmidtDecomposition {
    std::vector<double> coefficients;            // non-increasing, sum of squares 1
    std::vector<std::vector<c64>> left_basis;    // orthonormal, one vector per coefficient
    std::vector<std::vector<c64>> right_basis;
};

PureState make_fock_state(int modes, int cutoff, std::span<const int> occupation);
PureState make_fock_state(int modes, int cutoff, std::initializer_list<int> occupation);

enum class Ladder { Create, Annihilate };

/// Standard ladder action with matrix elements sqrt(n+1) / sqrt(n).  Creation
/// from the top level truncates that component and accumulates leakage.  The
/// result is NOT renormalized.
PureState apply_ladder(const PureState& state, int mode, Ladder kind);

/// <a|b>, conjugate-linear in the first argument.
c64 inner_product(const PureState& a, const PureState& b);

/// |<a|b>|^2 (global-phase-free overlap).
double fidelity(const PureState& a, const PureState& b);

/// Projects onto the herald pattern.  Returns the renormalized state on the
/// remaining modes (kept in order) and the pattern probability.  The global
/// phase is fixed so the first nonzero amplitude is real positive.
std::pair<PureState, double> project_pattern(const PureState& state, const HeraldPattern& pattern);

/// Partial trace down to `keep` (a non-empty proper subset of modes, in order).
DensityMatrix reduced_density(const PureState& state, std::span<const int> keep);
DensityMatrix reduced_density(const PureState& state, std::initializer_list<int> keep);

/// Singular value decomposition of the amplitude tensor reshaped across the
/// bipartition.  Coefficients are sorted descending.
SchmidtDecomposition schmidt_decompose(const PureState& state,
                                       std::span<const int> left_modes,
                                       std::span<const int> right_modes);
SchmidtDecomposition schmidt_decompose(const PureState& state,
                                       std::initializer_list<int> left_modes,
                                       std::initializer_list<int> right_modes);

} // namespace vortexlab::fock
