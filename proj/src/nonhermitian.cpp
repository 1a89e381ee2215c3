#include "antipt/nonhermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace antipt::nonhermitian {

using model::CavityConfig;
using numerics::CMatrix;
using numerics::Spectrum;
using scattering::SweepGrid;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kRealPartTol = 1e-9;  // protected supermodes have Re E = 0
constexpr double kEpRadius = 1e-6;     // refusal radius around |omega| = 1

using Pauli = std::array<Complex, 4>;  // row major 2x2

constexpr Pauli kS0{Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0)};
constexpr Pauli kSx{Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0)};
constexpr Pauli kSy{Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0)};

CMatrix kron(const Pauli& a, const Pauli& b) {
    CMatrix m(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    m(2 * i + k, 2 * j + l) = a[2 * i + j] * b[2 * k + l];
    return m;
}

Mode mode_from(const Spectrum& sp, int k) {
    return {sp.values[k], sp.right[k], sp.left[k], sp.condition[k], sp.bio_normalized[k]};
}

// analytic eigenvalues of the protected 2x2 block, valid on both sides of
// the transition
std::array<Complex, 2> h1_eigenvalues(double omega) {
    const Complex split = std::sqrt(Complex(omega * omega - 1.0, 0.0));
    return {Complex(0.0, -1.0) + split, Complex(0.0, -1.0) - split};
}

// probe coupling row entries  -i sqrt(gamma) exp(i 2 pi |x_j - x_p|)
std::vector<Complex> probe_row(double gamma, double x_p) {
    std::vector<Complex> c(4);
    const double root = std::sqrt(gamma);
    for (int j = 0; j < 4; ++j) {
        const double phase = kTwoPi * std::abs(model::kMirrorPositions[j] - x_p);
        c[j] = -kImag * root * std::exp(kImag * phase);
    }
    return c;
}

void rotate_phase(std::vector<Complex>& v, double angle) {
    const Complex f = std::exp(kImag * angle);
    for (auto& x : v) x *= f;
}

void ensure_probe_regime(double omega) {
    if (!(omega > -1.0 + kEpRadius) || !(omega < 1.0 - kEpRadius))
        throw NumericError(
            "probe couplings diverge near exceptional points; need splitting strictly inside "
            "(0, 4) with omega at least 1e-6 away from +-1, got omega = " +
            std::to_string(omega));
}

}  // namespace

CMatrix build_hc(double omega) {
    const Pauli tau_x = kSx;
    const Pauli tau_y = kSy;
    const Pauli tau_0 = kS0;
    CMatrix h = Complex(omega + 1.0, 0.0) * kron(kS0, tau_x) + kron(kSx, tau_0) -
                kImag * kron(kSy, tau_y) - kImag * kron(kS0, tau_0);
    return h;
}

BlockDecomposition block_decompose(double omega) {
    CMatrix h1{{Complex(-omega, -1.0), Complex(0.0, -1.0)},
               {Complex(0.0, -1.0), Complex(omega, -1.0)}};
    CMatrix h2{{Complex(-omega - 2.0, -1.0), Complex(0.0, 1.0)},
               {Complex(0.0, 1.0), Complex(omega + 2.0, -1.0)}};
    // symmetric/antisymmetric combinations across and within the mirrors
    CMatrix u(4);
    const double half = 0.5;
    const double rows[4][4] = {{1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}, {1, 1, 1, 1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) u(i, j) = half * rows[i][j];
    return {std::move(h1), std::move(h2), std::move(u)};
}

bool anti_pt_check(const CMatrix& h) {
    if (h.dim() != 2) throw NumericError("anti_pt_check: expected a 2x2 block");
    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const Complex flipped = std::conj(h(1 - i, 1 - j));
            worst = std::max(worst, std::abs(flipped + h(i, j)));
        }
    return worst <= 1e-12;
}

SupermodeSet supermodes(double omega) {
    const auto sp = numerics::eig(build_hc(omega));

    std::vector<int> protected_idx;
    for (int k = 0; k < 4; ++k)
        if (std::abs(sp.values[k].real()) <= kRealPartTol) protected_idx.push_back(k);

    if (protected_idx.size() != 2) {
        // outside the protected window (or at an exceptional point): track the
        // pair by proximity to the analytic block eigenvalues
        protected_idx.clear();
        std::vector<bool> used(4, false);
        for (const Complex target : h1_eigenvalues(omega)) {
            int best = -1;
            double best_d = 0.0;
            for (int k = 0; k < 4; ++k) {
                if (used[k]) continue;
                const double d = std::abs(sp.values[k] - target);
                if (best < 0 || d < best_d) {
                    best = k;
                    best_d = d;
                }
            }
            used[best] = true;
            protected_idx.push_back(best);
        }
    }

    int slow = protected_idx[0];
    int fast = protected_idx[1];
    if (sp.values[slow].imag() < sp.values[fast].imag()) std::swap(slow, fast);

    SupermodeSet set;
    set.classification_tolerance = kRealPartTol;
    set.psi_minus = mode_from(sp, slow);
    set.psi_plus = mode_from(sp, fast);
    int h2_slot = 0;
    for (int k = 0; k < 4; ++k)
        if (k != slow && k != fast) set.h2_modes[h2_slot++] = mode_from(sp, k);
    return set;
}

EpReport find_exceptional_points(const SweepGrid& w_range) {
    // bisection on the discriminants of the two blocks, as functions of the
    // splitting W (omega = W/2 - 1)
    EpReport report;
    const auto grid = w_range.values();
    const auto add_location = [&report](double w, std::pair<double, double> bracket) {
        for (const double seen : report.locations)
            if (std::abs(seen - w) < 1e-9) return;
        report.locations.push_back(w);
        report.brackets.push_back(bracket);
    };

    const std::array<double (*)(double), 2> discs = {
        +[](double w) {
            const double o = 0.5 * w - 1.0;
            return 1.0 - o * o;
        },
        +[](double w) {
            const double o = 0.5 * w + 1.0;
            return 1.0 - o * o;
        }};
    for (const auto disc : discs) {
        for (const double w : grid)
            if (disc(w) == 0.0) add_location(w, {w, w});
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            double a = grid[i], b = grid[i + 1];
            double fa = disc(a);
            const double fb = disc(b);
            if (!(fa * fb < 0.0)) continue;
            const std::pair<double, double> bracket{a, b};
            for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = disc(mid);
                if (fm == 0.0) {
                    a = mid;
                    b = mid;
                    break;
                }
                if (fa * fm < 0.0) {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            add_location(0.5 * (a + b), bracket);
        }
    }

    // sort locations (brackets follow)
    std::vector<std::size_t> order(report.locations.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return report.locations[x] < report.locations[y];
    });
    EpReport sorted;
    for (const std::size_t i : order) {
        sorted.locations.push_back(report.locations[i]);
        sorted.brackets.push_back(report.brackets[i]);
    }

    // coalescence measure: smallest-gap eigenpair condition at each location
    for (const double w : sorted.locations) {
        const auto sp = numerics::eig(build_hc(0.5 * w - 1.0));
        double best_gap = 0.0;
        double measure = 1.0;
        bool first = true;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                const double gap = std::abs(sp.values[i] - sp.values[j]);
                if (first || gap < best_gap) {
                    first = false;
                    best_gap = gap;
                    measure = std::min(sp.condition[i], sp.condition[j]);
                }
            }
        sorted.coalescence_measure.push_back(measure);
    }
    return sorted;
}

ProbeCouplings probe_couplings(const CavityConfig& config) {
    ensure_probe_regime(config.omega);
    auto set = supermodes(config.omega);
    const auto c = probe_row(config.probe_decay, config.probe_position);

    ProbeCouplings out;

    // slow mode: phase such that g_r is real non-negative
    {
        auto& r = set.psi_minus.right;
        const Complex raw = numerics::dot_unconj(c, r);
        if (std::abs(raw) > 0.0) rotate_phase(r, -std::arg(raw));
        out.g_r = numerics::dot_unconj(c, r);
        out.g_l = out.g_r / numerics::dot_unconj(r, r);
    }
    // fast mode: phase such that v_r is purely imaginary with positive
    // imaginary part
    {
        auto& r = set.psi_plus.right;
        const Complex raw = numerics::dot_unconj(c, r);
        if (std::abs(raw) > 0.0) rotate_phase(r, 0.5 * std::numbers::pi - std::arg(raw));
        out.v_r = numerics::dot_unconj(c, r);
        out.v_l = out.v_r / numerics::dot_unconj(r, r);
    }
    return out;
}

std::vector<std::pair<double, Complex>> coupling_vs_position(double omega, double gamma,
                                                             const SweepGrid& grid) {
    ensure_probe_regime(omega);
    auto set = supermodes(omega);
    auto& r = set.psi_minus.right;

    // anchor the mode phase at the quarter-wavelength reference point
    const auto c_ref = probe_row(gamma, 0.25);
    const Complex raw = numerics::dot_unconj(c_ref, r);
    if (std::abs(raw) > 0.0) rotate_phase(r, -std::arg(raw));

    std::vector<std::pair<double, Complex>> out;
    for (const double x_p : grid.values()) {
        if (!(x_p > 0.0) || !(x_p < 1.0))
            throw NumericError("coupling_vs_position: probe position must stay inside (0, 1)");
        const auto c = probe_row(gamma, x_p);
        out.emplace_back(x_p, numerics::dot_unconj(c, r));
    }
    return out;
}

double coupling_factor(double w) {
    if (!(w >= 0.0) || !(w <= 4.0))
        throw NumericError("coupling_factor: splitting must lie in [0, 4]");
    return w;
}

double coupling_factor_from_r0(double r0, scattering::R0Branch branch) {
    if (!(r0 > 0.0) || !(r0 <= 1.0))
        throw NumericError("coupling_factor_from_r0: reflection must lie in (0, 1]");
    const double root = std::sqrt(std::max(0.0, 1.0 - r0));
    if (branch == scattering::R0Branch::single_peak)
        return 2.0 * (1.0 - root) / std::sqrt(r0);
    return 2.0 * std::sqrt(r0) / (1.0 - root);
}

double reflection_threshold() {
    const double lower = scattering::r0_closed(1.0);
    const double upper = scattering::r0_closed(4.0);
    if (std::abs(lower - upper) > 1e-12)
        throw NumericError("reflection_threshold: window edges disagree");
    return lower;
}

}  // namespace antipt::nonhermitian
