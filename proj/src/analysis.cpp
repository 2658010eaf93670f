#include "vortexlab/analysis.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "fockops.hpp"
#include "linalg.hpp"
#include "vortexlab/errors.hpp"
#include "vortexlab/gaussian.hpp"

namespace vortexlab::analysis {

namespace {

constexpr double kSeriesTol = 1e-14;

double reduce_angle(double a) {
    const double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(a, two_pi);
    if (r <= -std::numbers::pi) r += two_pi;
    if (r > std::numbers::pi) r -= two_pi;
    return r;
}

void require_two_modes(const PureState& state, const char* what) {
    if (state.modes() != 2) {
        throw ShapeError(std::string(what) + ": expected a two-mode state");
    }
}

} // namespace

void Grid2D::validate() const {
    if (!(x_max > x_min) || !(y_max > y_min)) throw std::invalid_argument("Grid2D: max must exceed min");
    if (x_steps < 2 || y_steps < 2) throw std::invalid_argument("Grid2D: steps must be >= 2");
}

std::vector<double> Grid2D::xs() const {
    validate();
    std::vector<double> v(static_cast<std::size_t>(x_steps));
    const double h = (x_max - x_min) / (x_steps - 1);
    for (int i = 0; i < x_steps; ++i) v[static_cast<std::size_t>(i)] = x_min + h * i;
    return v;
}

std::vector<double> Grid2D::ys() const {
    validate();
    std::vector<double> v(static_cast<std::size_t>(y_steps));
    const double h = (y_max - y_min) / (y_steps - 1);
    for (int i = 0; i < y_steps; ++i) v[static_cast<std::size_t>(i)] = y_min + h * i;
    return v;
}

WignerSlice::WignerSlice(double d1, double d2) : delta1(reduce_angle(d1)), delta2(reduce_angle(d2)) {}

std::vector<double> hermite_functions(int nmax, double x) {
    std::vector<double> psi(static_cast<std::size_t>(nmax) + 1);
    const double pi_quarter = std::pow(std::numbers::pi, -0.25);
    psi[0] = pi_quarter * std::exp(-0.5 * x * x);
    if (nmax == 0) return psi;
    psi[1] = std::sqrt(2.0) * x * psi[0];
    for (int n = 1; n < nmax; ++n) {
        psi[static_cast<std::size_t>(n) + 1] =
            std::sqrt(2.0 / (n + 1.0)) * x * psi[static_cast<std::size_t>(n)] -
            std::sqrt(n / (n + 1.0)) * psi[static_cast<std::size_t>(n) - 1];
    }
    return psi;
}

std::vector<c64> field_wavefunction(const PureState& state, const Grid2D& grid) {
    require_two_modes(state, "field_wavefunction");
    grid.validate();
    const int d0 = state.dim(0), d1 = state.dim(1);
    const std::vector<double> xs = grid.xs();
    const std::vector<double> ys = grid.ys();

    // Psi(x, y) = psi(x)^T C psi(y) evaluated as two dense products
    Eigen::MatrixXd px(static_cast<Eigen::Index>(xs.size()), d0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const std::vector<double> h = hermite_functions(d0 - 1, xs[i]);
        for (int n = 0; n < d0; ++n) px(static_cast<Eigen::Index>(i), n) = h[static_cast<std::size_t>(n)];
    }
    Eigen::MatrixXd py(static_cast<Eigen::Index>(ys.size()), d1);
    for (std::size_t j = 0; j < ys.size(); ++j) {
        const std::vector<double> h = hermite_functions(d1 - 1, ys[j]);
        for (int n = 0; n < d1; ++n) py(static_cast<Eigen::Index>(j), n) = h[static_cast<std::size_t>(n)];
    }
    Eigen::MatrixXcd coeff(d0, d1);
    std::span<const c64> amps = state.amplitudes();
    for (int n0 = 0; n0 < d0; ++n0) {
        for (int n1 = 0; n1 < d1; ++n1) {
            coeff(n0, n1) = amps[static_cast<std::size_t>(n0) * d1 + static_cast<std::size_t>(n1)];
        }
    }
    const Eigen::MatrixXcd values = px.cast<c64>() * coeff * py.cast<c64>().transpose();

    std::vector<c64> out(grid.size());
    for (std::size_t j = 0; j < ys.size(); ++j) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            out[j * xs.size() + i] = values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return out;
}

std::vector<c64> vortex_wavefunction_analytic(double r, double eta_prime, int n, const Grid2D& grid) {
    grid.validate();
    if (r < 0.0 || eta_prime < 0.0) {
        throw std::invalid_argument("vortex_wavefunction_analytic: r and eta' must be >= 0");
    }
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double e2r = std::exp(2.0 * r);
    const double pref = std::sqrt(2.0 / (std::numbers::pi * (1.0 + eta_prime * eta_prime) *
                                         std::exp(4.0 * r)));
    const std::vector<double> xs = grid.xs();
    const std::vector<double> ys = grid.ys();
    std::vector<c64> out(grid.size());
    for (std::size_t j = 0; j < ys.size(); ++j) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double e1 = xs[i], e2 = ys[j];
            const c64 lin{e1, sign * eta_prime * e2};
            out[j * xs.size() + i] = pref * lin * std::exp(-(e1 * e1 + e2 * e2) / (2.0 * e2r));
        }
    }
    return out;
}

std::pair<std::vector<double>, std::vector<double>> density_and_phase(const std::vector<c64>& field) {
    std::vector<double> prob(field.size());
    std::vector<double> phase(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) {
        prob[i] = std::norm(field[i]);
        if (field[i] == c64{0.0, 0.0}) {
            phase[i] = std::numeric_limits<double>::quiet_NaN();
        } else {
            double a = std::arg(field[i]); // in (-pi, pi]
            if (a == -std::numbers::pi) a = std::numbers::pi;
            phase[i] = a;
        }
    }
    return {std::move(prob), std::move(phase)};
}

double wigner_vortex_analytic_at(double r, double eta_prime, c64 alpha1, c64 alpha2) {
    // squeezed states reduce to the photon-pair form at alpha~ = alpha cosh r - alpha* sinh r
    const double ch = std::cosh(r), sh = std::sinh(r);
    const c64 a1 = alpha1 * ch - std::conj(alpha1) * sh;
    const c64 a2 = alpha2 * ch - std::conj(alpha2) * sh;
    const double m1 = std::norm(a1), m2 = std::norm(a2);
    const double cross = std::imag(a1 * std::conj(a2)); // |a1||a2| sin(d1 - d2)
    const double ep2 = eta_prime * eta_prime;
    const double pref = 4.0 / (std::numbers::pi * std::numbers::pi * (1.0 + ep2));
    return pref * std::exp(-2.0 * (m1 + m2)) *
           ((4.0 * m1 - 1.0) + ep2 * (4.0 * m2 - 1.0) - 8.0 * eta_prime * cross);
}

std::vector<double> wigner_vortex_analytic(double r, double eta_prime, const WignerSlice& slice,
                                           const Grid2D& grid) {
    grid.validate();
    const c64 e1 = std::polar(1.0, slice.delta1);
    const c64 e2 = std::polar(1.0, slice.delta2);
    const std::vector<double> xs = grid.xs();
    const std::vector<double> ys = grid.ys();
    std::vector<double> out(grid.size());
    for (std::size_t j = 0; j < ys.size(); ++j) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            out[j * xs.size() + i] = wigner_vortex_analytic_at(r, eta_prime, xs[i] * e1, ys[j] * e2);
        }
    }
    return out;
}

namespace {

struct ComplexKey {
    double re, im;
    bool operator<(const ComplexKey& o) const {
        if (re != o.re) return re < o.re;
        return im < o.im;
    }
};

// Per-mode factor of the displaced parity: A(alpha) = D(2 alpha) Pi, so that
// W = (2/pi)^2 <psi| A1 ⊗ A2 |psi>.
linalg::Matrix parity_displacement(int dim, c64 alpha) {
    linalg::Matrix a = detail::displacement_operator(dim, 2.0 * alpha);
    for (int col = 1; col < dim; col += 2) {
        a.col(col) *= -1.0;
    }
    return a;
}

} // namespace

std::vector<double> wigner_numeric(const PureState& state,
                                   const std::vector<std::pair<c64, c64>>& points) {
    require_two_modes(state, "wigner_numeric");
    const int d0 = state.dim(0), d1 = state.dim(1);

    Eigen::MatrixXcd psi(d0, d1);
    std::span<const c64> amps = state.amplitudes();
    for (int n0 = 0; n0 < d0; ++n0) {
        for (int n1 = 0; n1 < d1; ++n1) {
            psi(n0, n1) = amps[static_cast<std::size_t>(n0) * d1 + static_cast<std::size_t>(n1)];
        }
    }

    std::map<ComplexKey, linalg::Matrix> cache1, cache2;
    auto factor = [&](std::map<ComplexKey, linalg::Matrix>& cache, int dim, c64 alpha) -> const linalg::Matrix& {
        const ComplexKey key{alpha.real(), alpha.imag()};
        auto it = cache.find(key);
        if (it == cache.end()) {
            it = cache.emplace(key, parity_displacement(dim, alpha)).first;
        }
        return it->second;
    };

    const double pref = 4.0 / (std::numbers::pi * std::numbers::pi);
    std::vector<double> out(points.size());
    // group by the first coordinate so the psi contraction is reused
    std::map<ComplexKey, Eigen::MatrixXcd> half; // A1 * psi per alpha1
    for (std::size_t p = 0; p < points.size(); ++p) {
        const auto& [alpha1, alpha2] = points[p];
        const ComplexKey k1{alpha1.real(), alpha1.imag()};
        auto it = half.find(k1);
        if (it == half.end()) {
            it = half.emplace(k1, factor(cache1, d0, alpha1) * psi).first;
        }
        const linalg::Matrix& a2 = factor(cache2, d1, alpha2);
        const Eigen::MatrixXcd full = it->second * a2.transpose();
        const c64 val = (psi.conjugate().cwiseProduct(full)).sum();
        out[p] = pref * val.real();
    }
    return out;
}

double wigner_numeric_at(const PureState& state, c64 alpha1, c64 alpha2) {
    return wigner_numeric(state, {{alpha1, alpha2}})[0];
}

bool negativity_predicate(double r, double eta_prime, double a1, double a2, double delta1,
                          double delta2) {
    const double lhs = std::pow(a1 * std::exp(r), 2) +
                       eta_prime * eta_prime * std::pow(a2 * std::exp(-r), 2) -
                       2.0 * eta_prime * a1 * a2 * std::sin(delta1 - delta2);
    return lhs < (1.0 + eta_prime * eta_prime) / 4.0;
}

double lz_expectation(const PureState& state) {
    require_two_modes(state, "lz_expectation");
    const int d0 = state.dim(0), d1 = state.dim(1);
    std::span<const c64> amps = state.amplitudes();
    // <a1† a2> = sum conj(psi[n0+1][n1-1]) sqrt((n0+1) n1) psi[n0][n1]
    c64 a1d_a2{0.0, 0.0};
    for (int n0 = 0; n0 + 1 < d0; ++n0) {
        for (int n1 = 1; n1 < d1; ++n1) {
            a1d_a2 += std::conj(amps[static_cast<std::size_t>(n0 + 1) * d1 + (n1 - 1)]) *
                      std::sqrt(static_cast<double>((n0 + 1) * n1)) *
                      amps[static_cast<std::size_t>(n0) * d1 + n1];
        }
    }
    // <-i(a1†a2 - a1a2†)> = 2 Im <a1† a2>
    return 2.0 * a1d_a2.imag();
}

CountingMeasurement lz_counting_measurement(const PureState& state) {
    require_two_modes(state, "lz_counting_measurement");
    const PureState rotated = gaussian::apply_coupler(state, 0, 1, std::numbers::pi / 2.0);
    const int d0 = rotated.dim(0), d1 = rotated.dim(1);
    std::span<const c64> amps = rotated.amplitudes();
    CountingMeasurement out;
    for (int n0 = 0; n0 < d0; ++n0) {
        for (int n1 = 0; n1 < d1; ++n1) {
            const double p = std::norm(amps[static_cast<std::size_t>(n0) * d1 + n1]);
            if (p > 0.0) out.distribution[n0 - n1] += p;
        }
    }
    for (const auto& [diff, p] : out.distribution) out.mean += diff * p;
    return out;
}

EntanglementReport logneg_numeric(const PureState& state) {
    require_two_modes(state, "logneg_numeric");
    const int d0 = state.dim(0), d1 = state.dim(1);
    const Eigen::Index dim = static_cast<Eigen::Index>(d0) * d1;
    std::span<const c64> amps = state.amplitudes();

    // rho^PT[(m0 m1), (n0 n1)] = psi[m0 n1] conj(psi[n0 m1])
    Eigen::MatrixXcd pt(dim, dim);
    for (int m0 = 0; m0 < d0; ++m0) {
        for (int m1 = 0; m1 < d1; ++m1) {
            for (int n0 = 0; n0 < d0; ++n0) {
                for (int n1 = 0; n1 < d1; ++n1) {
                    pt(m0 * d1 + m1, n0 * d1 + n1) =
                        amps[static_cast<std::size_t>(m0) * d1 + n1] *
                        std::conj(amps[static_cast<std::size_t>(n0) * d1 + m1]);
                }
            }
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt, Eigen::EigenvaluesOnly);
    double neg = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) {
        if (es.eigenvalues()[k] < 0.0) neg -= es.eigenvalues()[k];
    }

    EntanglementReport rep;
    rep.negativity = neg;
    rep.log_negativity = std::log2(1.0 + 2.0 * neg);

    const fock::SchmidtDecomposition sd = fock::schmidt_decompose(state, {0}, {1});
    rep.schmidt_coefficients = sd.coefficients;
    double csum = 0.0;
    for (double c : sd.coefficients) csum += c;
    rep.schmidt_log_negativity = 2.0 * std::log2(csum);
    return rep;
}

double logneg_analytic(double r, double Phi) {
    if (r < 0.0) throw std::invalid_argument("logneg_analytic: r must be >= 0");
    const double lam = r * std::sin(2.0 * Phi);
    const double t = std::abs(std::tanh(lam));
    const double sech2 = 1.0 / (std::cosh(lam) * std::cosh(lam));
    double sum = 0.0;
    double tn = 1.0;
    for (int n = 0;; ++n) {
        const double term = std::sqrt(n + 1.0) * tn;
        sum += term;
        if (term < kSeriesTol) break;
        tn *= t;
    }
    return 2.0 * std::log2(sech2 * sum);
}

std::vector<double> schmidt_coeffs_analytic(double r, double Phi, int count) {
    if (count < 1) throw std::invalid_argument("schmidt_coeffs_analytic: count must be >= 1");
    const double lam = r * std::sin(2.0 * Phi);
    const double t = std::tanh(lam);
    const double sech2 = 1.0 / (std::cosh(lam) * std::cosh(lam));
    std::vector<double> c(static_cast<std::size_t>(count));
    double tn = 1.0;
    for (int n = 0; n < count; ++n) {
        c[static_cast<std::size_t>(n)] = std::sqrt(n + 1.0) * tn * sech2;
        tn *= t;
    }
    return c;
}

double entanglement_ratio(double r, double Phi) {
    if (r == 0.0) throw UndefinedRatioError("entanglement_ratio: r = 0 has no baseline");
    if (r < 0.0) throw std::invalid_argument("entanglement_ratio: r must be >= 0");
    const double lam = r * std::sin(2.0 * Phi);
    if (std::abs(std::sin(2.0 * Phi)) < 1e-15) {
        return 0.0; // separable state: no entanglement to compare
    }
    const double t = std::abs(std::tanh(lam));
    const double sech2 = 1.0 / (std::cosh(lam) * std::cosh(lam));
    double sum = 0.0;
    double tn = 1.0;
    for (int n = 0;; ++n) {
        const double term = std::sqrt(n + 1.0) * tn;
        sum += term;
        if (term < kSeriesTol) break;
        tn *= t;
    }
    const double weighted = sum * sech2 * std::exp(-r);
    return weighted * weighted;
}

PureState elliptical_basis_rotate(const PureState& state, double Phi, int n) {
    require_two_modes(state, "elliptical_basis_rotate");
    // generator H with e^{iH} = [[cos Phi, -i s sin Phi], [sin Phi, i s cos Phi]],
    // s = e^{i n pi}; obtained from the 2x2 eigendecomposition of -i log
    const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
    Eigen::Matrix2cd u;
    u << c64{std::cos(Phi), 0.0}, c64{0.0, -sgn * std::sin(Phi)},
        c64{std::sin(Phi), 0.0}, c64{0.0, sgn * std::cos(Phi)};
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(u);
    Eigen::Matrix2cd logu = Eigen::Matrix2cd::Zero();
    Eigen::Vector2cd lambda;
    for (int k = 0; k < 2; ++k) {
        lambda[k] = std::log(es.eigenvalues()[k]); // principal branch, unit modulus input
    }
    const Eigen::Matrix2cd v = es.eigenvectors();
    Eigen::Matrix2cd h = v * lambda.asDiagonal() * v.inverse() * c64{0.0, -1.0};
    h = 0.5 * (h + h.adjoint().eval()); // clean round-off; exactly Hermitian for unitary input

    PureState out = state;
    detail::apply_passive_pair_exp(out, 0, 1, h(0, 0).real(), h(0, 1), h(1, 1).real());
    return out;
}

std::pair<c64, c64> cat_coefficients(double eta, double phi1, double phi2) {
    if (std::abs(std::cos(phi2 / 2.0)) < 1e-12) {
        throw std::domain_error("cat_coefficients: phi2 = pi is a tangent singularity");
    }
    const c64 w = eta * std::tan(phi2 / 2.0) * std::polar(1.0, -phi1);
    return {c64{1.0, 0.0} + w, c64{1.0, 0.0} - w};
}

PureState coherent_state(c64 alpha, int cutoff) {
    PureState out(1, cutoff);
    std::span<c64> amps = out.amplitudes();
    // alpha^n / sqrt(n!) via a running product; renormalized over the cutoff
    c64 term{1.0, 0.0};
    for (int n = 0; n <= cutoff; ++n) {
        amps[static_cast<std::size_t>(n)] = term;
        term *= alpha / std::sqrt(n + 1.0);
    }
    out.normalize();
    return out;
}

PureState cat_state(double alpha, bool even, int cutoff) {
    PureState out(1, cutoff);
    std::span<c64> amps = out.amplitudes();
    if (alpha == 0.0) {
        // degenerate limits: |0> (even) and |1> (odd)
        amps[even ? 0 : 1] = 1.0;
        return out;
    }
    const PureState plus = coherent_state(c64{alpha, 0.0}, cutoff);
    const PureState minus = coherent_state(c64{-alpha, 0.0}, cutoff);
    std::span<const c64> ap = plus.amplitudes();
    std::span<const c64> am = minus.amplitudes();
    const double sign = even ? 1.0 : -1.0;
    for (int n = 0; n <= cutoff; ++n) {
        amps[static_cast<std::size_t>(n)] = ap[static_cast<std::size_t>(n)] + sign * am[static_cast<std::size_t>(n)];
    }
    out.normalize();
    return out;
}

KittenFit kitten_fidelity(double r, bool even_parity) {
    const int cutoff = std::max(gaussian::default_cutoff(r), 40);
    const PureState target =
        gaussian::squeezed_number_state(even_parity ? 0 : 1, gaussian::SqueezeParam(r, 0.0), cutoff);

    auto overlap = [&](double alpha) {
        return fock::fidelity(cat_state(alpha, even_parity, cutoff), target);
    };

    // golden-section maximization on [0, 3], tolerance 1e-6
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0, b = 3.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = overlap(c), fd = overlap(d);
    while (b - a > 1e-6) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = overlap(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = overlap(d);
        }
    }
    const double alpha_star = 0.5 * (a + b);
    const double best = overlap(alpha_star);
    // single-peak bracketing check: the maximizer must not lose to the ends
    if (best + 1e-9 < overlap(0.0) || best + 1e-9 < overlap(3.0)) {
        throw std::runtime_error("kitten_fidelity: bracket [0,3] does not contain the maximum");
    }
    return {alpha_star, best};
}

} // namespace vortexlab::analysis
