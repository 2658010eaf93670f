#include "vortexlab/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fockops.hpp"
#include "linalg.hpp"

namespace vortexlab::gaussian {

namespace {

double reduce_angle(double a) {
    const double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(a, two_pi);
    if (r <= -std::numbers::pi) r += two_pi;
    if (r > std::numbers::pi) r -= two_pi;
    return r;
}

void enforce_leakage(PureState& state, double leakage, bool override_leakage, const char* what) {
    state.set_leakage(leakage);
    if (!override_leakage && leakage > kLeakageTol) {
        throw CutoffLeakageError(std::string(what) + ": truncation leakage " +
                                     std::to_string(leakage) + " exceeds bound",
                                 leakage);
    }
}

} // namespace

int default_cutoff(double r_max) {
    return static_cast<int>(std::ceil(10.0 + 20.0 * std::max(0.0, r_max)));
}

SqueezeParam::SqueezeParam(double r_in, double theta_in) : r(r_in), theta_s(reduce_angle(theta_in)) {
    if (!std::isfinite(r) || r < 0.0) {
        throw std::invalid_argument("SqueezeParam: r must be finite and >= 0");
    }
}

CouplerParam CouplerParam::from_transmittivity(double t) {
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("CouplerParam: t outside [0,1]");
    return CouplerParam(2.0 * std::acos(t));
}

PureState apply_squeeze(const PureState& state, int mode, const SqueezeParam& zeta,
                        bool override_leakage) {
    const int d = state.dim(mode);
    PureState out = state;
    if (zeta.r == 0.0) {
        out.set_leakage(0.0);
        return out;
    }
    const linalg::Matrix s = detail::squeeze_operator(d, zeta.zeta());
    detail::apply_single_mode_matrix(out, mode, s);
    const double kept = out.norm_sqr();
    enforce_leakage(out, std::max(0.0, 1.0 - kept), override_leakage, "apply_squeeze");
    out.normalize();
    return out;
}

PureState apply_two_mode_squeeze(const PureState& state, int mode_j, int mode_l,
                                 const SqueezeParam& zeta, bool override_leakage,
                                 TwoModeSqueezeMethod method) {
    if (mode_j == mode_l) throw ShapeError("apply_two_mode_squeeze: modes must differ");
    PureState out = state;
    if (zeta.r == 0.0) {
        out.set_leakage(0.0);
        return out;
    }

    if (method == TwoModeSqueezeMethod::Factored) {
        // S_jl = exp(tau a_j†a_l†) sech(r)^(n_j+n_l+1) exp(-tau* a_j a_l),
        // tau = e^{i theta} tanh r.  Lowering terminates; raising truncates at
        // the cutoff, which is where the leakage comes from.
        const c64 tau = std::polar(std::tanh(zeta.r), zeta.theta_s);
        const int kmax = std::max(state.dim(mode_j), state.dim(mode_l));

        auto series = [&](const PureState& in, c64 coeff, fock::Ladder kind) {
            PureState acc = in;
            PureState term = in;
            for (int k = 1; k <= kmax; ++k) {
                term = fock::apply_ladder(fock::apply_ladder(term, mode_j, kind), mode_l, kind);
                const c64 scale = coeff / static_cast<double>(k);
                std::span<c64> t = term.amplitudes();
                std::span<c64> a = acc.amplitudes();
                double term_norm = 0.0;
                for (std::size_t i = 0; i < t.size(); ++i) {
                    t[i] *= scale;
                    a[i] += t[i];
                    term_norm += std::norm(t[i]);
                }
                if (term_norm < 1e-34 * acc.norm_sqr()) break;
            }
            return acc;
        };

        out = series(out, -std::conj(tau), fock::Ladder::Annihilate);

        // diagonal factor sech(r)^(n_j + n_l + 1)
        const double sech = 1.0 / std::cosh(zeta.r);
        const std::size_t sj = out.stride(mode_j);
        const std::size_t sl = out.stride(mode_l);
        const int dj = out.dim(mode_j);
        const int dl = out.dim(mode_l);
        std::vector<double> powers(static_cast<std::size_t>(dj + dl), 0.0);
        for (std::size_t p = 0; p < powers.size(); ++p) powers[p] = std::pow(sech, static_cast<double>(p) + 1.0);
        std::span<c64> amps = out.amplitudes();
        detail::for_each_pair_base(out, mode_j, mode_l, [&](std::size_t base) {
            for (int nj = 0; nj < dj; ++nj) {
                for (int nl = 0; nl < dl; ++nl) {
                    amps[base + static_cast<std::size_t>(nj) * sj + static_cast<std::size_t>(nl) * sl] *=
                        powers[static_cast<std::size_t>(nj + nl)];
                }
            }
        });

        out = series(out, tau, fock::Ladder::Create);
        out.set_leakage(0.0); // ladder bookkeeping superseded by the norm deficit below
    } else {
        // The generator zeta a_j†a_l† - zeta* a_j a_l conserves n_j - n_l, so
        // exponentiate one dense block per difference on a padded ladder and
        // crop each block back to the state's cutoffs.
        const int dj = state.dim(mode_j);
        const int dl = state.dim(mode_l);
        const double lt = -std::log(std::tanh(std::max(zeta.r, 1e-3)));
        const int pad = static_cast<int>(std::ceil(30.0 / lt)) + 8;
        const int bj = dj + pad, bl = dl + pad;
        const c64 z = zeta.zeta();
        const std::size_t sj = out.stride(mode_j);
        const std::size_t sl = out.stride(mode_l);
        std::span<c64> amps = out.amplitudes();

        std::vector<linalg::Matrix> blocks;
        std::vector<int> dplus, dminus, kcs;
        for (int delta = -(bl - 1); delta <= bj - 1; ++delta) {
            const int dp = std::max(delta, 0);
            const int dm = std::max(-delta, 0);
            const int kc = std::min(dj - dp, dl - dm); // levels inside the cutoffs
            if (kc <= 0) continue;
            const int kpad = std::min(bj - dp, bl - dm);
            linalg::Matrix g = linalg::Matrix::Zero(kpad, kpad);
            for (int k = 0; k + 1 < kpad; ++k) {
                const double w = std::sqrt(static_cast<double>((dp + k + 1) * (dm + k + 1)));
                g(k + 1, k) += z * w;
                g(k, k + 1) -= std::conj(z) * w;
            }
            blocks.push_back(linalg::expm(g).topLeftCorner(kc, kc));
            dplus.push_back(dp);
            dminus.push_back(dm);
            kcs.push_back(kc);
        }

        detail::for_each_pair_base(out, mode_j, mode_l, [&](std::size_t base) {
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                const int kc = kcs[b];
                linalg::Vector x(kc);
                for (int k = 0; k < kc; ++k) {
                    x[k] = amps[base + static_cast<std::size_t>(dplus[b] + k) * sj +
                                static_cast<std::size_t>(dminus[b] + k) * sl];
                }
                linalg::Vector y = blocks[b] * x;
                for (int k = 0; k < kc; ++k) {
                    amps[base + static_cast<std::size_t>(dplus[b] + k) * sj +
                         static_cast<std::size_t>(dminus[b] + k) * sl] = y[k];
                }
            }
        });
    }

    const double kept = out.norm_sqr();
    enforce_leakage(out, std::max(0.0, 1.0 - kept), override_leakage, "apply_two_mode_squeeze");
    out.normalize();
    return out;
}

PureState apply_coupler(const PureState& state, int mode_j, int mode_l, double theta) {
    PureState out = state;
    detail::apply_passive_pair_exp(out, mode_j, mode_l, 0.0, c64{-theta / 2.0, 0.0}, 0.0);
    return out;
}

PureState apply_phase(const PureState& state, int mode, double phi) {
    const int d = state.dim(mode);
    const std::size_t stride = state.stride(mode);
    const std::size_t block = stride * static_cast<std::size_t>(d);
    PureState out = state;
    std::span<c64> amps = out.amplitudes();
    std::vector<c64> phases(static_cast<std::size_t>(d));
    for (int n = 0; n < d; ++n) phases[static_cast<std::size_t>(n)] = std::polar(1.0, phi * n);
    for (std::size_t base = 0; base < amps.size(); base += block) {
        for (std::size_t inner = 0; inner < stride; ++inner) {
            for (int n = 0; n < d; ++n) {
                amps[base + inner + static_cast<std::size_t>(n) * stride] *= phases[static_cast<std::size_t>(n)];
            }
        }
    }
    return out;
}

PureState apply_mzi(const PureState& state, int mode_j, int mode_l, double phi1, double phi2) {
    PureState out = apply_phase(state, mode_j, phi1 / 2.0);
    out = apply_phase(out, mode_l, -phi1 / 2.0);
    // rotation generator i(a_j†a_l - a_l†a_j) scaled by phi2/2
    detail::apply_passive_pair_exp(out, mode_j, mode_l, 0.0, c64{0.0, phi2 / 2.0}, 0.0);
    return out;
}

PureState apply_y_junction(const PureState& state, int mode_j, int mode_l) {
    PureState out = state;
    // orthogonal mixing = exp(-i (pi/4) sigma_y) on the pair
    detail::apply_passive_pair_exp(out, mode_j, mode_l, 0.0, c64{0.0, std::numbers::pi / 4.0}, 0.0);
    return out;
}

PureState apply_passive_u2(const PureState& state, int mode_j, int mode_l,
                           double h00, c64 h01, double h11) {
    PureState out = state;
    detail::apply_passive_pair_exp(out, mode_j, mode_l, h00, h01, h11);
    return out;
}

PureState squeezed_number_state(int n, const SqueezeParam& zeta, int cutoff,
                                bool override_leakage) {
    if (n != 0 && n != 1) {
        throw std::invalid_argument("squeezed_number_state: n must be 0 or 1");
    }
    PureState out(1, cutoff);
    std::span<c64> amps = out.amplitudes();

    const double r = zeta.r;
    const c64 phase_tanh = std::polar(std::tanh(r), zeta.theta_s);
    double kept = 0.0;
    double total = 1.0; // closed forms are normalized over the full ladder

    if (n == 0) {
        // c_{2k+2}/c_{2k} = e^{i th} tanh r sqrt((2k+1)(2k+2)) / (2(k+1))
        c64 c = c64{1.0 / std::sqrt(std::cosh(r)), 0.0};
        for (int k = 0; 2 * k <= cutoff; ++k) {
            amps[static_cast<std::size_t>(2 * k)] = c;
            kept += std::norm(c);
            c *= phase_tanh * std::sqrt(static_cast<double>((2 * k + 1) * (2 * k + 2))) /
                 (2.0 * (k + 1));
        }
    } else {
        // c_{2k+3}/c_{2k+1} = e^{i th} tanh r sqrt((2k+2)(2k+3)) / (2(k+1))
        c64 c = c64{std::pow(std::cosh(r), -1.5), 0.0};
        for (int k = 0; 2 * k + 1 <= cutoff; ++k) {
            amps[static_cast<std::size_t>(2 * k + 1)] = c;
            kept += std::norm(c);
            c *= phase_tanh * std::sqrt(static_cast<double>((2 * k + 2) * (2 * k + 3))) /
                 (2.0 * (k + 1));
        }
    }

    enforce_leakage(out, std::max(0.0, total - kept), override_leakage, "squeezed_number_state");
    out.normalize();
    return out;
}

} // namespace vortexlab::gaussian
