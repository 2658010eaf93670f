#pragma once

// Internal tensor-application helpers shared by the gate implementations
// (not installed).

#include <complex>
#include <functional>
#include <vector>

#include "linalg.hpp"
#include "vortexlab/fock.hpp"

namespace vortexlab::detail {

using fock::PureState;
using fock::c64;

/// Applies a dense d x d matrix to one mode of the tensor (d = dim(mode)).
void apply_single_mode_matrix(PureState& state, int mode, const linalg::Matrix& u);

/// Visits every joint index of two modes: for each assignment of the other
/// modes, `body` gets the base offset; per-level offsets are
/// base + nj*stride_j + nl*stride_l.
void for_each_pair_base(const PureState& state, int mode_j, int mode_l,
                        const std::function<void(std::size_t)>& body);

/// Applies exp(i * [h00 n_j + h11 n_l + h01 a_j†a_l + h01* a_l†a_j]) using the
/// conservation of n_j + n_l (one Hermitian eigensolve per pair-total block).
void apply_passive_pair_exp(PureState& state, int mode_j, int mode_l,
                            double h00, c64 h01, double h11);

/// Top-left `dim` x `dim` block of exp(G) where G is generated by `fill` on a
/// space padded to `big_dim` (true operator elements followed by projection).
linalg::Matrix cropped_generator_exp(int dim, int big_dim,
                                     const std::function<void(linalg::Matrix&)>& fill);

/// Builder for the single-mode squeeze generator (zeta a†² - zeta* a²)/2.
void fill_squeeze_generator(linalg::Matrix& g, c64 zeta);

/// Builder for the displacement generator alpha a† - alpha* a.
void fill_displacement_generator(linalg::Matrix& g, c64 alpha);

/// Squeeze operator matrix elements <m|S(zeta)|n> for m,n < dim.
linalg::Matrix squeeze_operator(int dim, c64 zeta);

/// Displacement operator matrix elements <m|D(alpha)|n> for m,n < dim.
linalg::Matrix displacement_operator(int dim, c64 alpha);

} // namespace vortexlab::detail
