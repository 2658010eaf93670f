#include "fockops.hpp"

#include <algorithm>
#include <cmath>

namespace vortexlab::detail {

void apply_single_mode_matrix(PureState& state, int mode, const linalg::Matrix& u) {
    const int d = state.dim(mode);
    const std::size_t stride = state.stride(mode);
    const std::size_t block = stride * static_cast<std::size_t>(d);
    std::span<c64> amps = state.amplitudes();

    linalg::Vector x(d), y(d);
    for (std::size_t base = 0; base < amps.size(); base += block) {
        for (std::size_t inner = 0; inner < stride; ++inner) {
            const std::size_t off = base + inner;
            for (int n = 0; n < d; ++n) x[n] = amps[off + static_cast<std::size_t>(n) * stride];
            y.noalias() = u * x;
            for (int n = 0; n < d; ++n) amps[off + static_cast<std::size_t>(n) * stride] = y[n];
        }
    }
}

void for_each_pair_base(const PureState& state, int mode_j, int mode_l,
                        const std::function<void(std::size_t)>& body) {
    const int modes = state.modes();
    std::vector<int> rest;
    for (int m = 0; m < modes; ++m) {
        if (m != mode_j && m != mode_l) rest.push_back(m);
    }
    std::vector<std::size_t> strides(rest.size());
    std::vector<int> dims(rest.size());
    for (std::size_t k = 0; k < rest.size(); ++k) {
        strides[k] = state.stride(rest[k]);
        dims[k] = state.dim(rest[k]);
    }
    std::vector<int> occ(rest.size(), 0);
    while (true) {
        std::size_t base = 0;
        for (std::size_t k = 0; k < rest.size(); ++k) {
            base += static_cast<std::size_t>(occ[k]) * strides[k];
        }
        body(base);
        std::size_t k = rest.size();
        while (k > 0) {
            --k;
            if (++occ[k] < dims[k]) break;
            occ[k] = 0;
            if (k == 0) return;
        }
        if (rest.empty()) return;
    }
}

void apply_passive_pair_exp(PureState& state, int mode_j, int mode_l,
                            double h00, c64 h01, double h11) {
    if (mode_j == mode_l) throw ShapeError("passive pair op needs distinct modes");
    if (mode_j > mode_l) {
        std::swap(mode_j, mode_l);
        std::swap(h00, h11);
        h01 = std::conj(h01);
    }
    const int dj = state.dim(mode_j);
    const int dl = state.dim(mode_l);
    const std::size_t sj = state.stride(mode_j);
    const std::size_t sl = state.stride(mode_l);

    // one unitary per conserved total m = n_j + n_l
    const int max_total = dj - 1 + dl - 1;
    std::vector<linalg::Matrix> blocks(static_cast<std::size_t>(max_total) + 1);
    std::vector<int> lo(static_cast<std::size_t>(max_total) + 1);
    for (int m = 0; m <= max_total; ++m) {
        const int nj_lo = std::max(0, m - (dl - 1));
        const int nj_hi = std::min(dj - 1, m);
        const int sz = nj_hi - nj_lo + 1;
        lo[static_cast<std::size_t>(m)] = nj_lo;
        linalg::Matrix h = linalg::Matrix::Zero(sz, sz);
        for (int a = 0; a < sz; ++a) {
            const int nj = nj_lo + a;
            const int nl = m - nj;
            h(a, a) = c64{h00 * nj + h11 * nl, 0.0};
            if (a + 1 < sz) {
                // <nj+1, nl-1| h01 a_j† a_l |nj, nl>
                h(a + 1, a) = h01 * std::sqrt(static_cast<double>((nj + 1) * nl));
                h(a, a + 1) = std::conj(h(a + 1, a));
            }
        }
        blocks[static_cast<std::size_t>(m)] = linalg::exp_i_hermitian(h);
    }

    std::span<c64> amps = state.amplitudes();
    for_each_pair_base(state, mode_j, mode_l, [&](std::size_t base) {
        for (int m = 0; m <= max_total; ++m) {
            const linalg::Matrix& u = blocks[static_cast<std::size_t>(m)];
            const int nj_lo = lo[static_cast<std::size_t>(m)];
            const int sz = static_cast<int>(u.rows());
            linalg::Vector x(sz);
            for (int a = 0; a < sz; ++a) {
                const int nj = nj_lo + a;
                const int nl = m - nj;
                x[a] = amps[base + static_cast<std::size_t>(nj) * sj + static_cast<std::size_t>(nl) * sl];
            }
            linalg::Vector y = u * x;
            for (int a = 0; a < sz; ++a) {
                const int nj = nj_lo + a;
                const int nl = m - nj;
                amps[base + static_cast<std::size_t>(nj) * sj + static_cast<std::size_t>(nl) * sl] = y[a];
            }
        }
    });
}

linalg::Matrix cropped_generator_exp(int dim, int big_dim,
                                     const std::function<void(linalg::Matrix&)>& fill) {
    linalg::Matrix g = linalg::Matrix::Zero(big_dim, big_dim);
    fill(g);
    const linalg::Matrix full = linalg::expm(g);
    return full.topLeftCorner(dim, dim);
}

void fill_squeeze_generator(linalg::Matrix& g, c64 zeta) {
    const int d = static_cast<int>(g.rows());
    for (int n = 0; n + 2 < d; ++n) {
        const double w = std::sqrt(static_cast<double>((n + 1) * (n + 2)));
        g(n + 2, n) += 0.5 * zeta * w;
        g(n, n + 2) -= 0.5 * std::conj(zeta) * w;
    }
}

void fill_displacement_generator(linalg::Matrix& g, c64 alpha) {
    const int d = static_cast<int>(g.rows());
    for (int n = 0; n + 1 < d; ++n) {
        const double w = std::sqrt(static_cast<double>(n + 1));
        g(n + 1, n) += alpha * w;
        g(n, n + 1) -= std::conj(alpha) * w;
    }
}

namespace {

int squeeze_pad(int dim, double r) {
    // enough headroom that the cropped block carries converged operator
    // elements; tails fall off like tanh(r)^(pad/2)
    const double t = std::tanh(std::max(r, 1e-3));
    const int by_rate = static_cast<int>(std::ceil(76.0 / -std::log(t)));
    return std::max({2 * dim, 96, by_rate});
}

int displacement_pad(double mag) {
    return static_cast<int>(std::ceil(mag * mag + 10.0 * mag + 32.0));
}

} // namespace

linalg::Matrix squeeze_operator(int dim, c64 zeta) {
    const int big = dim + squeeze_pad(dim, std::abs(zeta));
    return cropped_generator_exp(dim, big, [&](linalg::Matrix& g) { fill_squeeze_generator(g, zeta); });
}

linalg::Matrix displacement_operator(int dim, c64 alpha) {
    const int big = dim + displacement_pad(std::abs(alpha));
    return cropped_generator_exp(dim, big, [&](linalg::Matrix& g) { fill_displacement_generator(g, alpha); });
}

} // namespace vortexlab::detail
