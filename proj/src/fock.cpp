#include "vortexlab/fock.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace vortexlab::fock {

namespace {

constexpr double kGaugeEps = 1e-12;
constexpr double kImpossibleHerald = 1e-15;

std::string occupation_str(std::span<const int> occ) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < occ.size(); ++i) {
        os << occ[i] << (i + 1 < occ.size() ? "," : "");
    }
    os << ")";
    return os.str();
}

} // namespace

PureState::PureState(int modes, int cutoff) {
    if (modes < 1) throw ShapeError("PureState: modes must be positive");
    if (cutoff < 1) throw ShapeError("PureState: cutoff must be positive");
    dims_.assign(static_cast<std::size_t>(modes), cutoff + 1);
    std::size_t total = 1;
    for (int d : dims_) total *= static_cast<std::size_t>(d);
    amps_.assign(total, c64{0.0, 0.0});
}

PureState PureState::with_cutoffs(const std::vector<int>& cutoffs) {
    if (cutoffs.empty()) throw ShapeError("PureState: modes must be positive");
    PureState s(1, 1);
    s.dims_.clear();
    std::size_t total = 1;
    for (int c : cutoffs) {
        if (c < 1) throw ShapeError("PureState: cutoff must be positive");
        s.dims_.push_back(c + 1);
        total *= static_cast<std::size_t>(c + 1);
    }
    s.amps_.assign(total, c64{0.0, 0.0});
    s.leakage_ = 0.0;
    return s;
}

int PureState::cutoff() const {
    return *std::max_element(dims_.begin(), dims_.end()) - 1;
}

int PureState::dim(int mode) const {
    if (mode < 0 || mode >= modes()) throw ShapeError("PureState: mode index out of range");
    return dims_[static_cast<std::size_t>(mode)];
}

bool PureState::uniform() const {
    return std::all_of(dims_.begin(), dims_.end(), [&](int d) { return d == dims_[0]; });
}

std::size_t PureState::index_of(std::span<const int> occupation) const {
    if (static_cast<int>(occupation.size()) != modes()) {
        throw ShapeError("index_of: occupation arity does not match mode count");
    }
    std::size_t idx = 0;
    for (int m = 0; m < modes(); ++m) {
        const int n = occupation[static_cast<std::size_t>(m)];
        if (n < 0 || n >= dims_[static_cast<std::size_t>(m)]) {
            throw CutoffError("occupation " + occupation_str(occupation) +
                              " exceeds cutoff on mode " + std::to_string(m));
        }
        idx = idx * static_cast<std::size_t>(dims_[static_cast<std::size_t>(m)]) +
              static_cast<std::size_t>(n);
    }
    return idx;
}

c64 PureState::amplitude(std::span<const int> occupation) const {
    return amps_[index_of(occupation)];
}

std::size_t PureState::stride(int mode) const {
    if (mode < 0 || mode >= modes()) throw ShapeError("stride: mode index out of range");
    std::size_t s = 1;
    for (int m = modes() - 1; m > mode; --m) {
        s *= static_cast<std::size_t>(dims_[static_cast<std::size_t>(m)]);
    }
    return s;
}

double PureState::norm_sqr() const {
    double acc = 0.0;
    for (const c64& a : amps_) acc += std::norm(a);
    return acc;
}

double PureState::normalize() {
    const double n = std::sqrt(norm_sqr());
    if (n > 0.0) {
        for (c64& a : amps_) a /= n;
    }
    return n;
}

PureState PureState::padded(int new_cutoff) const {
    if (new_cutoff + 1 < *std::max_element(dims_.begin(), dims_.end())) {
        throw CutoffError("padded: new cutoff below current content");
    }
    PureState out(modes(), new_cutoff);
    std::vector<int> occ(static_cast<std::size_t>(modes()), 0);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (amps_[i] != c64{0.0, 0.0}) {
            out.amps_[out.index_of(occ)] = amps_[i];
        }
        // odometer increment over this state's dims
        for (int m = modes() - 1; m >= 0; --m) {
            if (++occ[static_cast<std::size_t>(m)] < dims_[static_cast<std::size_t>(m)]) break;
            occ[static_cast<std::size_t>(m)] = 0;
        }
    }
    out.leakage_ = leakage_;
    return out;
}

void HeraldPattern::validate(const PureState& state) const {
    std::vector<int> seen;
    for (const auto& [mode, count] : assignments) {
        if (mode < 0 || mode >= state.modes()) {
            throw ShapeError("herald pattern references mode " + std::to_string(mode));
        }
        if (count < 0 || count > state.cutoff(mode)) {
            throw CutoffError("herald count " + std::to_string(count) +
                              " outside 0..cutoff on mode " + std::to_string(mode));
        }
        if (std::find(seen.begin(), seen.end(), mode) != seen.end()) {
            throw ShapeError("herald pattern repeats mode " + std::to_string(mode));
        }
        seen.push_back(mode);
    }
}

double DensityMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < dim; ++i) t += at(i, i).real();
    return t;
}

double DensityMatrix::purity() const {
    double p = 0.0;
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            p += std::norm(at(r, c));
        }
    }
    return p;
}

PureState make_fock_state(int modes, int cutoff, std::span<const int> occupation) {
    PureState s(modes, cutoff);
    s.data()[s.index_of(occupation)] = c64{1.0, 0.0};
    return s;
}

PureState make_fock_state(int modes, int cutoff, std::initializer_list<int> occupation) {
    std::vector<int> occ(occupation);
    return make_fock_state(modes, cutoff, std::span<const int>(occ));
}

PureState apply_ladder(const PureState& state, int mode, Ladder kind) {
    const int d = state.dim(mode);
    const std::size_t stride = state.stride(mode);
    const std::size_t block = stride * static_cast<std::size_t>(d);

    PureState out = state;
    std::span<c64> dst = out.amplitudes();
    std::span<const c64> src = state.amplitudes();
    double lost = 0.0;

    for (std::size_t base = 0; base < src.size(); base += block) {
        for (std::size_t inner = 0; inner < stride; ++inner) {
            const std::size_t off = base + inner;
            if (kind == Ladder::Annihilate) {
                // new[n] = sqrt(n+1) * old[n+1]
                for (int n = 0; n + 1 < d; ++n) {
                    dst[off + static_cast<std::size_t>(n) * stride] =
                        std::sqrt(static_cast<double>(n + 1)) *
                        src[off + static_cast<std::size_t>(n + 1) * stride];
                }
                dst[off + static_cast<std::size_t>(d - 1) * stride] = c64{0.0, 0.0};
            } else {
                // new[n+1] = sqrt(n+1) * old[n]; the top level has nowhere to go
                lost += (static_cast<double>(d)) * std::norm(src[off + static_cast<std::size_t>(d - 1) * stride]);
                for (int n = d - 1; n >= 1; --n) {
                    dst[off + static_cast<std::size_t>(n) * stride] =
                        std::sqrt(static_cast<double>(n)) *
                        src[off + static_cast<std::size_t>(n - 1) * stride];
                }
                dst[off] = c64{0.0, 0.0};
            }
        }
    }
    if (kind == Ladder::Create) {
        out.add_leakage(lost);
    }
    return out;
}

c64 inner_product(const PureState& a, const PureState& b) {
    if (a.modes() != b.modes() || a.size() != b.size()) {
        throw ShapeError("inner_product: states live on different spaces");
    }
    for (int m = 0; m < a.modes(); ++m) {
        if (a.dim(m) != b.dim(m)) {
            throw ShapeError("inner_product: per-mode cutoffs differ");
        }
    }
    c64 acc{0.0, 0.0};
    std::span<const c64> pa = a.amplitudes();
    std::span<const c64> pb = b.amplitudes();
    for (std::size_t i = 0; i < pa.size(); ++i) {
        acc += std::conj(pa[i]) * pb[i];
    }
    return acc;
}

double fidelity(const PureState& a, const PureState& b) {
    return std::norm(inner_product(a, b));
}

std::pair<PureState, double> project_pattern(const PureState& state, const HeraldPattern& pattern) {
    pattern.validate(state);
    if (static_cast<int>(pattern.assignments.size()) >= state.modes()) {
        throw ShapeError("project_pattern: pattern must leave at least one mode");
    }

    std::vector<int> pinned(static_cast<std::size_t>(state.modes()), -1);
    for (const auto& [mode, count] : pattern.assignments) {
        pinned[static_cast<std::size_t>(mode)] = count;
    }
    std::vector<int> kept;
    std::vector<int> kept_cutoffs;
    for (int m = 0; m < state.modes(); ++m) {
        if (pinned[static_cast<std::size_t>(m)] < 0) {
            kept.push_back(m);
            kept_cutoffs.push_back(state.cutoff(m));
        }
    }

    PureState out = PureState::with_cutoffs(kept_cutoffs);
    std::span<c64> dst = out.amplitudes();
    std::span<const c64> src = state.amplitudes();

    std::vector<int> occ(static_cast<std::size_t>(state.modes()), 0);
    double prob = 0.0;
    for (std::size_t i = 0; i < src.size(); ++i) {
        bool match = true;
        for (int m = 0; m < state.modes(); ++m) {
            const int pin = pinned[static_cast<std::size_t>(m)];
            if (pin >= 0 && occ[static_cast<std::size_t>(m)] != pin) {
                match = false;
                break;
            }
        }
        if (match) {
            std::size_t j = 0;
            for (std::size_t k = 0; k < kept.size(); ++k) {
                j = j * static_cast<std::size_t>(kept_cutoffs[k] + 1) +
                    static_cast<std::size_t>(occ[static_cast<std::size_t>(kept[k])]);
            }
            dst[j] = src[i];
            prob += std::norm(src[i]);
        }
        for (int m = state.modes() - 1; m >= 0; --m) {
            if (++occ[static_cast<std::size_t>(m)] < state.dim(m)) break;
            occ[static_cast<std::size_t>(m)] = 0;
        }
    }

    if (prob < kImpossibleHerald) {
        throw ImpossibleHeraldError("herald pattern has probability " + std::to_string(prob));
    }

    const double inv = 1.0 / std::sqrt(prob);
    for (c64& a : dst) a *= inv;

    // gauge: first nonzero amplitude real positive
    for (const c64& a : dst) {
        if (std::abs(a) > kGaugeEps) {
            const c64 phase = std::conj(a) / std::abs(a);
            for (c64& b : dst) b *= phase;
            break;
        }
    }

    out.set_leakage(state.leakage());
    return {std::move(out), prob};
}

DensityMatrix reduced_density(const PureState& state, std::span<const int> keep) {
    if (keep.empty() || static_cast<int>(keep.size()) >= state.modes()) {
        throw ShapeError("reduced_density: keep must be a non-empty proper subset");
    }
    std::vector<bool> kept(static_cast<std::size_t>(state.modes()), false);
    for (int m : keep) {
        if (m < 0 || m >= state.modes()) throw ShapeError("reduced_density: bad mode index");
        if (kept[static_cast<std::size_t>(m)]) throw ShapeError("reduced_density: repeated mode");
        kept[static_cast<std::size_t>(m)] = true;
    }

    std::size_t dim_keep = 1;
    for (int m : keep) dim_keep *= static_cast<std::size_t>(state.dim(m));

    DensityMatrix rho;
    rho.dim = static_cast<int>(dim_keep);
    rho.entries.assign(dim_keep * dim_keep, c64{0.0, 0.0});

    // accumulate rho[K, K'] = sum_rest psi[K, rest] conj(psi[K', rest]):
    // bucket amplitudes by the traced-out sub-index.
    std::vector<std::size_t> keep_index(state.size());
    std::vector<std::size_t> rest_index(state.size());
    std::vector<int> occ(static_cast<std::size_t>(state.modes()), 0);
    for (std::size_t i = 0; i < state.size(); ++i) {
        std::size_t ki = 0;
        for (int m : keep) {
            ki = ki * static_cast<std::size_t>(state.dim(m)) +
                 static_cast<std::size_t>(occ[static_cast<std::size_t>(m)]);
        }
        std::size_t ri = 0;
        for (int m = 0; m < state.modes(); ++m) {
            if (!kept[static_cast<std::size_t>(m)]) {
                ri = ri * static_cast<std::size_t>(state.dim(m)) +
                     static_cast<std::size_t>(occ[static_cast<std::size_t>(m)]);
            }
        }
        keep_index[i] = ki;
        rest_index[i] = ri;
        for (int m = state.modes() - 1; m >= 0; --m) {
            if (++occ[static_cast<std::size_t>(m)] < state.dim(m)) break;
            occ[static_cast<std::size_t>(m)] = 0;
        }
    }

    std::size_t dim_rest = state.size() / dim_keep;
    std::vector<std::vector<c64>> buckets(dim_rest, std::vector<c64>(dim_keep, c64{0.0, 0.0}));
    std::span<const c64> src = state.amplitudes();
    for (std::size_t i = 0; i < state.size(); ++i) {
        buckets[rest_index[i]][keep_index[i]] = src[i];
    }
    for (const auto& v : buckets) {
        for (std::size_t r = 0; r < dim_keep; ++r) {
            if (v[r] == c64{0.0, 0.0}) continue;
            for (std::size_t c = 0; c < dim_keep; ++c) {
                rho.entries[r * dim_keep + c] += v[r] * std::conj(v[c]);
            }
        }
    }
    return rho;
}

DensityMatrix reduced_density(const PureState& state, std::initializer_list<int> keep) {
    std::vector<int> k(keep);
    return reduced_density(state, std::span<const int>(k));
}

SchmidtDecomposition schmidt_decompose(const PureState& state,
                                       std::span<const int> left_modes,
                                       std::span<const int> right_modes) {
    if (left_modes.empty() || right_modes.empty() ||
        static_cast<int>(left_modes.size() + right_modes.size()) != state.modes()) {
        throw ShapeError("schmidt_decompose: bipartition must cover all modes");
    }
    std::vector<bool> seen(static_cast<std::size_t>(state.modes()), false);
    for (std::span<const int> part : {left_modes, right_modes}) {
        for (int m : part) {
            if (m < 0 || m >= state.modes() || seen[static_cast<std::size_t>(m)]) {
                throw ShapeError("schmidt_decompose: bipartition is not a partition");
            }
            seen[static_cast<std::size_t>(m)] = true;
        }
    }

    std::size_t dim_l = 1, dim_r = 1;
    for (int m : left_modes) dim_l *= static_cast<std::size_t>(state.dim(m));
    for (int m : right_modes) dim_r *= static_cast<std::size_t>(state.dim(m));

    Eigen::MatrixXcd a(static_cast<Eigen::Index>(dim_l), static_cast<Eigen::Index>(dim_r));
    a.setZero();
    std::vector<int> occ(static_cast<std::size_t>(state.modes()), 0);
    std::span<const c64> src = state.amplitudes();
    for (std::size_t i = 0; i < state.size(); ++i) {
        std::size_t li = 0, ri = 0;
        for (int m : left_modes) {
            li = li * static_cast<std::size_t>(state.dim(m)) +
                 static_cast<std::size_t>(occ[static_cast<std::size_t>(m)]);
        }
        for (int m : right_modes) {
            ri = ri * static_cast<std::size_t>(state.dim(m)) +
                 static_cast<std::size_t>(occ[static_cast<std::size_t>(m)]);
        }
        a(static_cast<Eigen::Index>(li), static_cast<Eigen::Index>(ri)) = src[i];
        for (int m = state.modes() - 1; m >= 0; --m) {
            if (++occ[static_cast<std::size_t>(m)] < state.dim(m)) break;
            occ[static_cast<std::size_t>(m)] = 0;
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);

    SchmidtDecomposition out;
    const Eigen::Index rank = svd.singularValues().size();
    out.coefficients.resize(static_cast<std::size_t>(rank));
    for (Eigen::Index k = 0; k < rank; ++k) {
        out.coefficients[static_cast<std::size_t>(k)] = svd.singularValues()[k];
    }
    out.left_basis.resize(static_cast<std::size_t>(rank));
    out.right_basis.resize(static_cast<std::size_t>(rank));
    for (Eigen::Index k = 0; k < rank; ++k) {
        auto& l = out.left_basis[static_cast<std::size_t>(k)];
        auto& r = out.right_basis[static_cast<std::size_t>(k)];
        l.resize(dim_l);
        r.resize(dim_r);
        for (std::size_t i = 0; i < dim_l; ++i) l[i] = svd.matrixU()(static_cast<Eigen::Index>(i), k);
        for (std::size_t j = 0; j < dim_r; ++j) r[j] = svd.matrixV()(static_cast<Eigen::Index>(j), k);
    }
    return out;
}

SchmidtDecomposition schmidt_decompose(const PureState& state,
                                       std::initializer_list<int> left_modes,
                                       std::initializer_list<int> right_modes) {
    std::vector<int> l(left_modes), r(right_modes);
    return schmidt_decompose(state, std::span<const int>(l), std::span<const int>(r));
}

} // namespace vortexlab::fock
