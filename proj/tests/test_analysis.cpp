#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "fockops.hpp"
#include "linalg.hpp"
#include "oracles.hpp"
#include "vortexlab/analysis.hpp"
#include "vortexlab/chip.hpp"
#include "vortexlab/fock.hpp"
#include "vortexlab/gaussian.hpp"

using namespace vortexlab;
using fock::PureState;
using fock::c64;

namespace {
const double pi = std::numbers::pi;

analysis::Grid2D small_grid(double extent, int steps) {
    analysis::Grid2D g;
    g.x_min = -extent;
    g.x_max = extent;
    g.x_steps = steps;
    g.y_min = -extent;
    g.y_max = extent;
    g.y_steps = steps;
    return g;
}
} // namespace

TEST_CASE("oscillator eigenfunctions") {
    // explicit low orders
    for (double x : {-1.3, 0.0, 0.4, 2.1}) {
        const auto psi = analysis::hermite_functions(3, x);
        const double g = std::pow(pi, -0.25) * std::exp(-0.5 * x * x);
        CHECK(psi[0] == doctest::Approx(g).epsilon(1e-13));
        CHECK(psi[1] == doctest::Approx(std::sqrt(2.0) * x * g).epsilon(1e-13));
        CHECK(psi[2] == doctest::Approx((2.0 * x * x - 1.0) / std::sqrt(2.0) * g).epsilon(1e-12));
    }

    // orthonormality by wide trapezoid quadrature
    const int K = 801;
    const double h = 16.0 / (K - 1);
    double n33 = 0.0, o35 = 0.0;
    for (int i = 0; i < K; ++i) {
        const double x = -8.0 + h * i;
        const auto psi = analysis::hermite_functions(5, x);
        n33 += psi[3] * psi[3] * h;
        o35 += psi[3] * psi[5] * h;
    }
    CHECK(n33 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(o35) < 1e-10);

    // the recurrence stays finite deep into the ladder
    const auto deep = analysis::hermite_functions(300, 1.7);
    CHECK(std::isfinite(deep[300]));
}

TEST_CASE("field wavefunction") {
    const analysis::Grid2D grid = small_grid(4.0, 41);

    SUBCASE("vacuum is the round gaussian") {
        const PureState vac = fock::make_fock_state(2, 6, {0, 0});
        const auto field = analysis::field_wavefunction(vac, grid);
        const auto xs = grid.xs();
        const auto ys = grid.ys();
        double worst = 0.0;
        for (std::size_t j = 0; j < ys.size(); ++j) {
            for (std::size_t i = 0; i < xs.size(); ++i) {
                const c64 expect =
                    std::exp(-0.5 * (xs[i] * xs[i] + ys[j] * ys[j])) / std::sqrt(pi);
                worst = std::max(worst, std::abs(field[j * xs.size() + i] - expect));
            }
        }
        CHECK(worst < 1e-12);
    }

    SUBCASE("numeric and closed-form vortex fields agree pointwise") {
        // pointwise 1e-8 agreement needs the amplitude tail (not just the
        // norm loss) below 1e-8, hence a cutoff well past the leakage rule
        for (double etap : {1.0, 5.0}) {
            const PureState v = chip::make_cv_vortex(0.3, etap, 0, 32);
            const auto numeric = analysis::field_wavefunction(v, grid);
            const auto closed = analysis::vortex_wavefunction_analytic(0.3, etap, 0, grid);
            double worst = 0.0;
            for (std::size_t k = 0; k < numeric.size(); ++k) {
                worst = std::max(worst, std::abs(numeric[k] - closed[k]));
            }
            CHECK(worst < 1e-8);
        }
    }

    SUBCASE("the origin is a node") {
        const auto closed = analysis::vortex_wavefunction_analytic(0.3, 1.0, 0, small_grid(1.0, 3));
        CHECK(std::abs(closed[4]) == 0.0); // center of the 3x3 grid
    }

    SUBCASE("density integrates to one") {
        const PureState v = chip::make_cv_vortex(0.3, 1.0, 0, 16);
        const analysis::Grid2D wide = small_grid(7.0, 141);
        const auto field = analysis::field_wavefunction(v, wide);
        const double hx = 14.0 / 140.0;
        double total = 0.0;
        for (const c64& f : field) total += std::norm(f) * hx * hx;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("closed-form density and phase") {
    // probability at a marked point, from the squared closed form
    const analysis::Grid2D g{1.0, 1.0, 2, 0.0, 0.0, 2}; // degenerate; use direct evaluation instead
    analysis::Grid2D point;
    point.x_min = 1.0;
    point.x_max = 2.0;
    point.x_steps = 2;
    point.y_min = 0.0;
    point.y_max = 1.0;
    point.y_steps = 2;
    const auto field = analysis::vortex_wavefunction_analytic(0.3, 1.0, 0, point);
    const auto [prob, phase] = analysis::density_and_phase(field);
    const double expect = std::exp(-std::exp(-0.6)) / (pi * std::exp(1.2));
    CHECK(prob[0] == doctest::Approx(expect).epsilon(1e-12)); // (E1,E2) = (1,0)

    // winding of the phase around the origin
    const int K = 64;
    double winding = 0.0;
    double prev = 0.0;
    for (int k = 0; k <= K; ++k) {
        const double ang = 2.0 * pi * k / K;
        analysis::Grid2D p;
        p.x_min = 0.8 * std::cos(ang);
        p.x_max = p.x_min + 1.0;
        p.x_steps = 2;
        p.y_min = 0.8 * std::sin(ang);
        p.y_max = p.y_min + 1.0;
        p.y_steps = 2;
        const auto f = analysis::vortex_wavefunction_analytic(0.3, 1.0, 0, p);
        const double a = std::arg(f[0]);
        if (k > 0) {
            double d = a - prev;
            while (d > pi) d -= 2.0 * pi;
            while (d < -pi) d += 2.0 * pi;
            winding += d;
        }
        prev = a;
    }
    CHECK(winding == doctest::Approx(2.0 * pi).epsilon(1e-9));

    // phase at an exact node is the quiet-NaN sentinel
    std::vector<c64> with_node{c64{1.0, 0.0}, c64{0.0, 0.0}};
    const auto [p2, ph2] = analysis::density_and_phase(with_node);
    CHECK(ph2[0] == 0.0);
    CHECK(std::isnan(ph2[1]));
}

TEST_CASE("closed-form Wigner values") {
    SUBCASE("single-photon circular state at the origin") {
        CHECK(analysis::wigner_vortex_analytic_at(0.0, 1.0, c64{0, 0}, c64{0, 0}) ==
              doctest::Approx(-4.0 / (pi * pi)).epsilon(1e-12));
    }
    SUBCASE("gaussian falloff at large amplitude") {
        CHECK(std::abs(analysis::wigner_vortex_analytic_at(0.3, 1.0, c64{4.5, 0}, c64{0, 4.5})) <
              1e-10);
    }
    SUBCASE("the default cut is negative around the origin") {
        const analysis::WignerSlice slice(pi / 2.0, 0.0);
        const auto w = analysis::wigner_vortex_analytic(0.3, 1.0, slice, small_grid(0.2, 3));
        for (double v : w) CHECK(v < 0.0);
    }
}

TEST_CASE("displaced-parity Wigner evaluation") {
    SUBCASE("vacuum and single photon at the origin") {
        const PureState vac = fock::make_fock_state(2, 8, {0, 0});
        CHECK(analysis::wigner_numeric_at(vac, c64{0, 0}, c64{0, 0}) ==
              doctest::Approx(4.0 / (pi * pi)).epsilon(1e-12));
        const PureState photon = fock::make_fock_state(2, 8, {1, 0});
        CHECK(analysis::wigner_numeric_at(photon, c64{0, 0}, c64{0, 0}) ==
              doctest::Approx(-4.0 / (pi * pi)).epsilon(1e-12));
    }

    SUBCASE("agrees with the closed form across squeezing") {
        for (double r : {0.0, 0.3}) {
            const PureState v = chip::make_cv_vortex(r, 1.0, 0, 24);
            double worst = 0.0;
            for (double u : {-1.5, -0.75, 0.0, 0.75, 1.5}) {
                for (double w : {-1.5, -0.75, 0.0, 0.75, 1.5}) {
                    const c64 a1{0.0, u}, a2{w, 0.0};
                    worst = std::max(worst, std::abs(analysis::wigner_numeric_at(v, a1, a2) -
                                                     analysis::wigner_vortex_analytic_at(r, 1.0, a1, a2)));
                }
            }
            CHECK(worst < 1e-6);
        }
    }

    SUBCASE("integrates to one over the sampled cell") {
        // trapezoid over [-4,4]^4 with half-unit spacing; the grid factorizes
        // into per-axis displacement factors D(2x) and D(2iy)
        const PureState v = chip::make_cv_vortex(0.3, 1.0, 0, 16);
        const int d = 17;
        Eigen::MatrixXcd psi(d, d);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                psi(i, j) = v.amplitudes()[static_cast<std::size_t>(i) * d + j];
            }
        }
        const int K = 17;
        const double h = 8.0 / (K - 1);
        const int mid = 150; // inner contraction window for the factor product
        std::vector<linalg::Matrix> fx(K), fy(K);
        for (int k = 0; k < K; ++k) {
            const double val = 2.0 * (-4.0 + h * k);
            fx[static_cast<std::size_t>(k)] =
                detail::displacement_operator(mid, c64{val, 0.0});
            fy[static_cast<std::size_t>(k)] =
                detail::displacement_operator(mid, c64{0.0, val});
        }
        // D(bx + i by) = e^{+i bx by} D(bx) D(i by); parity signs fold into
        // the columns
        std::vector<std::vector<Eigen::MatrixXcd>> A(K, std::vector<Eigen::MatrixXcd>(K));
        for (int ix = 0; ix < K; ++ix) {
            for (int iy = 0; iy < K; ++iy) {
                const double bx = 2.0 * (-4.0 + h * ix);
                const double by = 2.0 * (-4.0 + h * iy);
                        Eigen::MatrixXcd full = fx[static_cast<std::size_t>(ix)] *
                                        fy[static_cast<std::size_t>(iy)];
                Eigen::MatrixXcd a = std::polar(1.0, bx * by) * full.topLeftCorner(d, d);
                for (int col = 1; col < d; col += 2) a.col(col) *= -1.0;
                A[static_cast<std::size_t>(ix)][static_cast<std::size_t>(iy)] = a;
            }
        }
        // cross-check the factorization against the production evaluator
        {
            const double x = -4.0 + h * 3, y = -4.0 + h * 12;
            const double direct = analysis::wigner_numeric_at(v, c64{x, y}, c64{0, 0});
            const c64 val = (psi.conjugate().cwiseProduct(
                                 A[3][12] * psi * A[(K - 1) / 2][(K - 1) / 2].transpose()))
                                .sum();
            CHECK(direct == doctest::Approx(4.0 / (pi * pi) * val.real()).epsilon(1e-9));
        }

        const double pref = 4.0 / (pi * pi);
        double integral = 0.0;
        for (int ix1 = 0; ix1 < K; ++ix1) {
            for (int iy1 = 0; iy1 < K; ++iy1) {
                const Eigen::MatrixXcd x1 =
                    A[static_cast<std::size_t>(ix1)][static_cast<std::size_t>(iy1)] * psi;
                const Eigen::MatrixXcd z = psi.adjoint() * x1; // indexed (m2, n2)
                double w1 = (ix1 == 0 || ix1 == K - 1) ? 0.5 : 1.0;
                w1 *= (iy1 == 0 || iy1 == K - 1) ? 0.5 : 1.0;
                for (int ix2 = 0; ix2 < K; ++ix2) {
                    for (int iy2 = 0; iy2 < K; ++iy2) {
                        double w2 = (ix2 == 0 || ix2 == K - 1) ? 0.5 : 1.0;
                        w2 *= (iy2 == 0 || iy2 == K - 1) ? 0.5 : 1.0;
                        const c64 val =
                            (z.transpose().cwiseProduct(
                                 A[static_cast<std::size_t>(ix2)][static_cast<std::size_t>(iy2)]))
                                .sum();
                        integral += w1 * w2 * pref * val.real();
                    }
                }
            }
        }
        integral *= h * h * h * h;
        CHECK(integral == doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("negative-region predicate") {
    SUBCASE("the origin is always inside") {
        for (double r : {0.0, 0.3, 0.6}) {
            for (double etap : {0.5, 1.0, 5.0}) {
                CHECK(analysis::negativity_predicate(r, etap, 0.0, 0.0, pi / 2.0, 0.0));
            }
        }
    }

    SUBCASE("circular single-photon reduction") {
        // |a1|^2 + |a2|^2 - 2 a1 a2 sin(d1-d2) < 1/2 at r = 0, eta' = 1
        CHECK(analysis::negativity_predicate(0.0, 1.0, 0.4, 0.4, pi / 2.0, 0.0));
        CHECK_FALSE(analysis::negativity_predicate(0.0, 1.0, 1.0, -1.0, pi / 2.0, 0.0));
    }

    SUBCASE("sign agreement with the closed form on its exact slices") {
        std::mt19937 rng(97);
        std::uniform_real_distribution<double> amp(-3.0, 3.0);
        std::uniform_real_distribution<double> angles(-pi, pi);
        int checked = 0;
        for (int trial = 0; trial < 10000; ++trial) {
            const double u = amp(rng), w = amp(rng);
            double r, d1, d2, etap;
            if (trial % 2 == 0) {
                // squeezed case on the canonical cut family
                r = (trial % 4 == 0) ? 0.3 : 0.6;
                etap = (trial % 8 < 4) ? 1.0 : 5.0;
                d1 = (rng() % 2 == 0) ? pi / 2.0 : -pi / 2.0;
                d2 = (rng() % 2 == 0) ? 0.0 : pi;
            } else {
                // no squeezing: arbitrary phases are exact
                r = 0.0;
                etap = (trial % 8 < 4) ? 1.0 : 2.0;
                d1 = angles(rng);
                d2 = angles(rng);
            }
            const c64 a1 = u * std::polar(1.0, d1);
            const c64 a2 = w * std::polar(1.0, d2);
            const double wig = analysis::wigner_vortex_analytic_at(r, etap, a1, a2);
            if (std::abs(wig) < 1e-12) continue; // boundary band
            CHECK(analysis::negativity_predicate(r, etap, u, w, d1, d2) == (wig < 0.0));
            ++checked;
        }
        CHECK(checked > 8000);
    }
}

TEST_CASE("angular-momentum diagnostics") {
    SUBCASE("circular states are unit eigenstates") {
        for (double r : {0.0, 0.3, 0.6}) {
            const PureState v = chip::make_cv_vortex(r, 1.0, 0, 100);
            CHECK(std::abs(analysis::lz_expectation(v) - 1.0) < 1e-10);
        }
    }

    SUBCASE("elliptical single-photon expectation") {
        for (double etap : {0.5, 2.0, 5.0}) {
            const PureState v = chip::make_dv_vortex(etap, pi / 2.0, 0, 2);
            CHECK(analysis::lz_expectation(v) ==
                  doctest::Approx(2.0 * etap / (1.0 + etap * etap)).epsilon(1e-12));
        }
    }

    SUBCASE("separable squeezed arms carry none") {
        const PureState s0 = gaussian::squeezed_number_state(0, gaussian::SqueezeParam(0.3, 0.0), 12);
        PureState prod(2, 12);
        for (int i = 0; i <= 12; ++i) {
            for (int j = 0; j <= 12; ++j) {
                prod.amplitudes()[static_cast<std::size_t>(i) * 13 + j] =
                    s0.amplitudes()[static_cast<std::size_t>(i)] *
                    s0.amplitudes()[static_cast<std::size_t>(j)];
            }
        }
        CHECK(std::abs(analysis::lz_expectation(prod)) < 1e-12);
    }

    SUBCASE("counting scheme on the single-photon state") {
        const auto counting = analysis::lz_counting_measurement(chip::make_dv_vortex(1.0, pi / 2.0, 0, 2));
        CHECK(counting.mean == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(counting.distribution.at(1) == doctest::Approx(1.0).epsilon(1e-12));

        const auto vac = analysis::lz_counting_measurement(fock::make_fock_state(2, 2, {0, 0}));
        CHECK(vac.mean == 0.0);
        CHECK(vac.distribution.at(0) == doctest::Approx(1.0).epsilon(1e-14));
    }

    SUBCASE("counting scheme on the squeezed state") {
        const PureState v = chip::make_cv_vortex(0.3, 1.0, 0, 40);
        const auto counting = analysis::lz_counting_measurement(v);
        CHECK(counting.mean == doctest::Approx(1.0).epsilon(1e-9));
        for (const auto& [diff, p] : counting.distribution) {
            if (p > 1e-12) CHECK(std::abs(diff) % 2 == 1);
        }
    }

    SUBCASE("counting mean equals the operator expectation") {
        for (unsigned seed : {31u, 32u, 33u}) {
            const PureState psi = oracles::random_low_energy(2, 14, 5, seed);
            const auto counting = analysis::lz_counting_measurement(psi);
            CHECK(std::abs(counting.mean - analysis::lz_expectation(psi)) < 1e-10);
        }
    }
}

TEST_CASE("log-negativity routes") {
    SUBCASE("separable and maximally entangled anchors") {
        const PureState prod = fock::make_fock_state(2, 4, {1, 0});
        CHECK(std::abs(analysis::logneg_numeric(prod).log_negativity) < 1e-12);
        const PureState bell = chip::make_dv_vortex(1.0, pi / 2.0, 0, 4);
        CHECK(analysis::logneg_numeric(bell).log_negativity ==
              doctest::Approx(1.0).epsilon(1e-10));
    }

    SUBCASE("report invariant") {
        const auto rep = analysis::logneg_numeric(chip::make_cv_vortex(0.2, 1.0, 0, 14));
        CHECK(rep.log_negativity ==
              doctest::Approx(std::log2(1.0 + 2.0 * rep.negativity)).epsilon(1e-12));
    }

    SUBCASE("analytic series against the partial-transpose pipeline") {
        for (double Phi : {pi / 4.0, 1.2, 0.3}) {
            const double lam = 0.3 * std::sin(2.0 * Phi);
            PureState seed = fock::make_fock_state(2, 24, {1, 0});
            const PureState state =
                gaussian::apply_two_mode_squeeze(seed, 0, 1, gaussian::SqueezeParam(lam, 0.0), true);
            CHECK(std::abs(analysis::logneg_numeric(state).log_negativity -
                           analysis::logneg_analytic(0.3, Phi)) < 1e-6);
        }
    }

    SUBCASE("closed-form limits") {
        CHECK(analysis::logneg_analytic(0.0, pi / 4.0) == 0.0);
        CHECK(std::abs(analysis::logneg_analytic(0.7, pi / 2.0)) < 1e-12);
    }

    SUBCASE("strictly increasing in the squeeze parameter") {
        double prev = -1.0;
        for (double r = 0.05; r <= 1.2000001; r += 0.05) {
            const double e = analysis::logneg_analytic(r, pi / 4.0);
            CHECK(e > prev);
            prev = e;
        }
    }
}

TEST_CASE("entanglement ratio") {
    CHECK(analysis::entanglement_ratio(0.5, pi / 4.0) > 1.0);
    CHECK(analysis::entanglement_ratio(0.5, pi / 2.0) == 0.0);
    CHECK_THROWS_AS((void)analysis::entanglement_ratio(0.0, pi / 4.0), UndefinedRatioError);

    // small ellipticity decays monotonically with the squeeze parameter
    double prev = 1e9;
    for (double r = 0.05; r <= 1.2000001; r += 0.05) {
        const double e = analysis::entanglement_ratio(r, 0.15);
        CHECK(e < prev);
        prev = e;
    }
}

TEST_CASE("coefficient ladder") {
    const auto at_zero = analysis::schmidt_coeffs_analytic(0.0, pi / 4.0, 5);
    CHECK(at_zero[0] == 1.0);
    CHECK(at_zero[1] == 0.0);

    const auto cs = analysis::schmidt_coeffs_analytic(0.3, pi / 4.0, 200);
    double s2 = 0.0;
    for (double c : cs) s2 += c * c;
    CHECK(s2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rotated-basis pipeline") {
    SUBCASE("normal-form construction carries the ladder exactly") {
        // local squeezers around the two-mode squeeze leave the singular values
        for (double Phi : {pi / 4.0, 0.6}) {
            const double lam_s = 0.3 * std::sin(2.0 * Phi);
            const double lam_c = 0.3 * std::cos(2.0 * Phi);
            PureState s = fock::make_fock_state(2, 28, {1, 0});
            s = gaussian::apply_two_mode_squeeze(s, 0, 1, gaussian::SqueezeParam(lam_s, 0.0), true);
            if (lam_c != 0.0) {
                s = gaussian::apply_squeeze(s, 0, gaussian::SqueezeParam(std::abs(lam_c),
                                                                          lam_c > 0 ? 0.0 : pi),
                                            true);
                s = gaussian::apply_squeeze(s, 1, gaussian::SqueezeParam(std::abs(lam_c),
                                                                          lam_c > 0 ? pi : 0.0),
                                            true);
            }
            const auto sd = fock::schmidt_decompose(s, {0}, {1});
            const auto cn = analysis::schmidt_coeffs_analytic(0.3, Phi, 10);
            for (int k = 0; k < 10; ++k) {
                CHECK(std::abs(sd.coefficients[static_cast<std::size_t>(k)] -
                               cn[static_cast<std::size_t>(k)]) < 1e-8);
            }
        }
    }

    SUBCASE("circular rotation reproduces the ladder from the raw vortex") {
        const PureState vortex = chip::make_cv_vortex(0.3, 1.0, 0, 26);
        const PureState rotated = analysis::elliptical_basis_rotate(vortex, pi / 4.0, 0);
        const auto cn = analysis::schmidt_coeffs_analytic(0.3, pi / 4.0, 8);
        for (int n = 0; n < 8; ++n) {
            std::vector<int> occ{n + 1, n};
            CHECK(std::abs(rotated.amplitude(occ) - c64{cn[static_cast<std::size_t>(n)], 0.0}) <
                  1e-9);
        }
    }

    SUBCASE("away from the circular point the ladder is a leading-order model") {
        // The exact rotated state has an effective pair parameter
        // asinh(sin(2 Phi) sinh(2r))/2 rather than r sin(2 Phi); at r = 0.3,
        // Phi = 0.6 the first ten singular values drift by about 2.7e-3.
        const PureState vortex = chip::make_cv_vortex(0.3, std::tan(0.6), 0, 30);
        const PureState rotated = analysis::elliptical_basis_rotate(vortex, 0.6, 0);
        const auto sd = fock::schmidt_decompose(rotated, {0}, {1});
        const auto cn = analysis::schmidt_coeffs_analytic(0.3, 0.6, 10);
        double dev = 0.0;
        for (int k = 0; k < 10; ++k) {
            dev = std::max(dev, std::abs(sd.coefficients[static_cast<std::size_t>(k)] -
                                         cn[static_cast<std::size_t>(k)]));
        }
        CHECK(dev > 1e-4);
        CHECK(dev < 1e-2);

        // the exact effective parameter restores the agreement
        const double lam = 0.5 * std::asinh(std::sin(1.2) * std::sinh(0.6));
        PureState ref = fock::make_fock_state(2, 30, {1, 0});
        ref = gaussian::apply_two_mode_squeeze(ref, 0, 1, gaussian::SqueezeParam(lam, 0.0), true);
        const auto sd_ref = fock::schmidt_decompose(ref, {0}, {1});
        CHECK(std::abs(sd.coefficients[0] - sd_ref.coefficients[0]) < 5e-4);
    }
}

TEST_CASE("coherent-branch weights") {
    SUBCASE("closed form") {
        const auto [cp, cm] = analysis::cat_coefficients(1.0, 0.0, pi / 2.0);
        CHECK(std::abs(cp - c64{2.0, 0.0}) < 1e-14);
        CHECK(std::abs(cm) < 1e-14);
        const auto [cp2, cm2] = analysis::cat_coefficients(1.0, pi, pi / 2.0);
        CHECK(std::abs(cp2) < 1e-14);
        CHECK(std::abs(cm2 - c64{2.0, 0.0}) < 1e-14);
        CHECK_THROWS_AS((void)analysis::cat_coefficients(1.0, 0.0, pi), std::domain_error);
    }

    SUBCASE("heralded state decomposes on the coherent product branches") {
        // At low squeezing the heralded two-term state is, up to normalization,
        // C-(|a,a> - |-a,-a>) + C+(|a,-a> - |-a,a>) with a the best coherent
        // match of the squeezed arms.
        const double r = 0.15;
        chip::VortexParams p;
        p.r = r;
        p.phi1 = 0.6;
        p.phi2 = 1.0;
        const auto [heralded, prob] =
            chip::herald_vortex(chip::first_order_state(p, 16), chip::HeraldClick::Mode3);

        const auto fit = analysis::kitten_fidelity(r, false);
        const double a = fit.alpha_star;
        const int cutoff = heralded.cutoff();
        auto coherent_product = [&](double s1, double s2) {
            const PureState c1 = analysis::coherent_state(c64{s1 * a, 0.0}, cutoff);
            const PureState c2 = analysis::coherent_state(c64{s2 * a, 0.0}, cutoff);
            PureState prod(2, cutoff);
            const int d = cutoff + 1;
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    prod.amplitudes()[static_cast<std::size_t>(i) * d + j] =
                        c1.amplitudes()[static_cast<std::size_t>(i)] *
                        c2.amplitudes()[static_cast<std::size_t>(j)];
                }
            }
            return prod;
        };
        // branch vectors B- and B+
        PureState bm = coherent_product(1.0, 1.0);
        {
            const PureState mm = coherent_product(-1.0, -1.0);
            for (std::size_t i = 0; i < bm.size(); ++i) {
                bm.amplitudes()[i] -= mm.amplitudes()[i];
            }
        }
        PureState bp = coherent_product(1.0, -1.0);
        {
            const PureState mp = coherent_product(-1.0, 1.0);
            for (std::size_t i = 0; i < bp.size(); ++i) {
                bp.amplitudes()[i] -= mp.amplitudes()[i];
            }
        }
        // least-squares weights in the (non-orthogonal) branch pair
        const c64 g11 = fock::inner_product(bm, bm), g12 = fock::inner_product(bm, bp);
        const c64 g22 = fock::inner_product(bp, bp);
        const c64 y1 = fock::inner_product(bm, heralded), y2 = fock::inner_product(bp, heralded);
        const c64 det = g11 * g22 - g12 * std::conj(g12);
        const c64 wm = (g22 * y1 - g12 * y2) / det;
        const c64 wp = (g11 * y2 - std::conj(g12) * y1) / det;

        const auto [cp, cm] = analysis::cat_coefficients(p.eta, p.phi1, p.phi2);
        // the measured branch ratio tracks C-/C+ at low squeezing
        const c64 measured = wm / wp;
        const c64 expected = cm / cp;
        CHECK(std::abs(measured - expected) / std::abs(expected) < 0.05);
    }
}

TEST_CASE("kitten matching") {
    SUBCASE("no squeezing collapses to the bare states") {
        const auto even = analysis::kitten_fidelity(0.0, true);
        CHECK(even.alpha_star < 1e-3); // flat to O(alpha^4): the search idles in round-off
        CHECK(even.fidelity == doctest::Approx(1.0).epsilon(1e-9));
        const auto odd = analysis::kitten_fidelity(0.0, false);
        CHECK(odd.fidelity == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("moderate squeezing still matches well") {
        const auto even = analysis::kitten_fidelity(0.3, true);
        CHECK(even.fidelity > 0.99);
        const auto odd = analysis::kitten_fidelity(0.3, false);
        CHECK(odd.fidelity > 0.99);
        CHECK(odd.alpha_star > 0.1);
    }

    SUBCASE("parity mismatch is exactly orthogonal") {
        const PureState odd_state =
            gaussian::squeezed_number_state(1, gaussian::SqueezeParam(0.3, 0.0), 20);
        const PureState even_cat = analysis::cat_state(0.8, true, 20);
        CHECK(std::abs(fock::inner_product(even_cat, odd_state)) == 0.0);
    }
}
