#include "antipt/polaritons.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace antipt::polaritons {

using model::CavityConfig;
using numerics::CMatrix;
using scattering::ScatteringPoint;
using scattering::SweepGrid;

EffectiveThreeLevel build_three_level(const CavityConfig& config) {
    const auto set = nonhermitian::supermodes(config.omega);
    const auto pc = nonhermitian::probe_couplings(config);
    const double gp = config.free_space_decay;

    CMatrix m(3);
    m(0, 0) = set.psi_minus.value - kImag * gp;
    m(1, 1) = set.psi_plus.value - kImag * gp;
    m(2, 2) = Complex(config.probe_detuning, -(config.probe_decay + gp));
    m(0, 2) = pc.g_l;
    m(1, 2) = pc.v_l;
    m(2, 0) = pc.g_r;
    m(2, 1) = pc.v_r;
    return {std::move(m), set.psi_minus.decay(), set.psi_plus.decay(), pc};
}

PolaritonSpectrum polariton_spectrum(const CavityConfig& config) {
    const auto three = build_three_level(config);
    const CMatrix& m = three.matrix;

    const Complex tr = m.trace();
    const Complex minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) +
                           m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                           m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    const Complex det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                        m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                        m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));

    const auto roots = numerics::cardano(1.0, -tr, minors, -det);
    PolaritonSpectrum out;
    for (int k = 0; k < 3; ++k) {
        out.energies[k] = roots.roots[k];
        out.dark[k] = std::abs(roots.roots[k].imag()) <= 1e-9;
    }
    return out;
}

namespace {

struct LorentzFit {
    double amplitude = 0.0;
    double center = 0.0;
    double width = 0.0;
    double rms_residual = 0.0;
    bool ok = false;
};

// least squares of y ~ A w^2 / ((x-c)^2 + w^2) by damped Gauss-Newton
LorentzFit fit_lorentzian(const std::vector<double>& x, const std::vector<double>& y,
                          double a0, double c0, double w0) {
    LorentzFit fit;
    const int n = static_cast<int>(x.size());
    if (n < 4) return fit;

    double a = a0, c = c0, w = std::max(std::abs(w0), 1e-12);
    const auto sse = [&](double pa, double pc, double pw) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = (x[i] - pc) * (x[i] - pc) + pw * pw;
            const double r = pa * pw * pw / d - y[i];
            s += r * r;
        }
        return s;
    };

    double current = sse(a, c, w);
    for (int iter = 0; iter < 60; ++iter) {
        // normal equations for parameters (A, c, w)
        double jtj[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
        double jtr[3] = {0, 0, 0};
        for (int i = 0; i < n; ++i) {
            const double dx = x[i] - c;
            const double den = dx * dx + w * w;
            const double model = a * w * w / den;
            const double r = model - y[i];
            const double g[3] = {w * w / den, 2.0 * a * w * w * dx / (den * den),
                                 2.0 * a * w * dx * dx / (den * den)};
            for (int p = 0; p < 3; ++p) {
                jtr[p] += g[p] * r;
                for (int q = 0; q < 3; ++q) jtj[p][q] += g[p] * g[q];
            }
        }
        // 3x3 solve by Gaussian elimination with a tiny ridge
        for (int p = 0; p < 3; ++p) jtj[p][p] += 1e-14 * (1.0 + jtj[p][p]);
        double step[3] = {jtr[0], jtr[1], jtr[2]};
        for (int p = 0; p < 3; ++p) {
            int piv = p;
            for (int q = p + 1; q < 3; ++q)
                if (std::abs(jtj[q][p]) > std::abs(jtj[piv][p])) piv = q;
            if (std::abs(jtj[piv][p]) < 1e-300) return fit;
            std::swap(jtj[p], jtj[piv]);
            std::swap(step[p], step[piv]);
            for (int q = p + 1; q < 3; ++q) {
                const double f = jtj[q][p] / jtj[p][p];
                for (int r2 = p; r2 < 3; ++r2) jtj[q][r2] -= f * jtj[p][r2];
                step[q] -= f * step[p];
            }
        }
        for (int p = 2; p >= 0; --p) {
            for (int q = p + 1; q < 3; ++q) step[p] -= jtj[p][q] * step[q];
            step[p] /= jtj[p][p];
        }

        double damp = 1.0;
        bool improved = false;
        for (int half = 0; half < 25; ++half) {
            const double na = a - damp * step[0];
            const double nc = c - damp * step[1];
            const double nw = w - damp * step[2];
            const double ns = sse(na, nc, std::abs(nw));
            if (ns < current) {
                const double rel = std::abs(na - a) + std::abs(nc - c) + std::abs(nw - w);
                a = na;
                c = nc;
                w = std::abs(nw);
                improved = true;
                const bool converged = rel < 1e-12 * (std::abs(a) + std::abs(c) + w + 1e-300) ||
                                       std::abs(current - ns) < 1e-28;
                current = ns;
                if (converged) iter = 60;
                break;
            }
            damp *= 0.5;
        }
        if (!improved) break;
    }

    fit.amplitude = a;
    fit.center = c;
    fit.width = std::abs(w);
    fit.rms_residual = std::sqrt(current / n);
    fit.ok = fit.width > 0.0 && std::isfinite(a) && std::isfinite(c) && std::isfinite(w);
    return fit;
}

// parabolic refinement of an extremum through three samples
double parabolic_vertex(double xm, double x0, double xp, double ym, double y0, double yp) {
    const double denom = (ym - 2.0 * y0 + yp);
    if (std::abs(denom) < 1e-300) return x0;
    const double shift = 0.5 * (ym - yp) / denom;
    const double h = 0.5 * (xp - xm);
    return x0 + shift * h;
}

}  // namespace

std::vector<SpectralFeature> extract_features(const std::vector<ScatteringPoint>& sweep,
                                              double residual_threshold) {
    const int n = static_cast<int>(sweep.size());
    std::vector<SpectralFeature> out;
    if (n < 5) return out;

    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
        x[i] = sweep[i].delta;
        y[i] = sweep[i].T;
    }

    for (int i = 1; i + 1 < n; ++i) {
        const bool is_max = y[i] > y[i - 1] && y[i] >= y[i + 1];
        const bool is_min = y[i] < y[i - 1] && y[i] <= y[i + 1];
        if (!is_max && !is_min) continue;

        SpectralFeature feat;
        feat.kind = is_max ? SpectralFeature::Kind::peak : SpectralFeature::Kind::antiresonance;

        // walk to the feet of the feature (monotonicity ends)
        int lo = i, hi = i;
        if (is_max) {
            while (lo > 0 && y[lo - 1] < y[lo]) --lo;
            while (hi + 1 < n && y[hi + 1] < y[hi]) ++hi;
        } else {
            while (lo > 0 && y[lo - 1] > y[lo]) --lo;
            while (hi + 1 < n && y[hi + 1] > y[hi]) ++hi;
        }
        // conservative prominence: measure against the nearer enclosing level
        const double baseline = is_max ? std::max(y[lo], y[hi]) : std::min(y[lo], y[hi]);
        const double prominence = std::abs(y[i] - baseline);
        if (prominence < 1e-9) continue;  // numerical ripple

        // signed data relative to the baseline, always fitted as a peak
        const double sign = is_max ? 1.0 : -1.0;
        const double c0 = parabolic_vertex(x[i - 1], x[i], x[i + 1], y[i - 1], y[i], y[i + 1]);

        // half-maximum crossings give the initial width
        const double half = baseline + 0.5 * sign * prominence;
        double left_cross = x[lo], right_cross = x[hi];
        for (int k = i; k > lo; --k) {
            const bool crossed = is_max ? (y[k - 1] <= half) : (y[k - 1] >= half);
            if (crossed) {
                const double f = (half - y[k]) / (y[k - 1] - y[k]);
                left_cross = x[k] + f * (x[k - 1] - x[k]);
                break;
            }
        }
        for (int k = i; k < hi; ++k) {
            const bool crossed = is_max ? (y[k + 1] <= half) : (y[k + 1] >= half);
            if (crossed) {
                const double f = (half - y[k]) / (y[k + 1] - y[k]);
                right_cross = x[k] + f * (x[k + 1] - x[k]);
                break;
            }
        }
        const double w0 = std::max(0.5 * (right_cross - left_cross), 1e-12);

        // fit window: six half-widths, clipped to the feature's feet
        const double wl = std::max(x[lo], c0 - 6.0 * w0);
        const double wr = std::min(x[hi], c0 + 6.0 * w0);
        std::vector<double> fx, fyraw;
        for (int k = lo; k <= hi; ++k) {
            if (x[k] < wl || x[k] > wr) continue;
            fx.push_back(x[k]);
            fyraw.push_back(y[k]);
        }

        feat.center = c0;
        feat.linewidth = w0;
        feat.amplitude = prominence;
        int across = 0;
        for (const double xf : fx)
            if (std::abs(xf - c0) <= w0) ++across;
        if (across < 8 || static_cast<int>(fx.size()) < 8) {
            feat.fit_residual = std::numeric_limits<double>::infinity();
            feat.accepted = false;
            feat.note = "sweep too sparse for a fit (need >= 8 samples across the feature)";
            out.push_back(feat);
            continue;
        }

        // the feet carry part of the Lorentzian tail; refine the baseline
        // with the fitted model and repeat
        LorentzFit fit;
        double b = baseline;
        for (int pass = 0; pass < 3; ++pass) {
            std::vector<double> fy(fx.size());
            for (std::size_t k = 0; k < fx.size(); ++k) fy[k] = sign * (fyraw[k] - b);
            const LorentzFit trial =
                fit_lorentzian(fx, fy, pass == 0 ? prominence : fit.amplitude,
                               pass == 0 ? c0 : fit.center, pass == 0 ? w0 : fit.width);
            if (!trial.ok) break;
            fit = trial;
            const auto tail = [&](double xf) {
                const double dx = xf - fit.center;
                return fit.amplitude * fit.width * fit.width /
                       (dx * dx + fit.width * fit.width);
            };
            const double corrected =
                0.5 * ((y[lo] - sign * tail(x[lo])) + (y[hi] - sign * tail(x[hi])));
            if (std::abs(corrected - b) < 1e-12) break;
            b = corrected;
        }
        if (!fit.ok) {
            feat.fit_residual = std::numeric_limits<double>::infinity();
            feat.accepted = false;
            feat.note = "fit did not converge";
            out.push_back(feat);
            continue;
        }
        if (fit.center < wl || fit.center > wr || fit.width > (wr - wl)) {
            // fit ran away from the data; keep the grid estimates
            feat.fit_residual = std::numeric_limits<double>::infinity();
            feat.accepted = false;
            feat.note = "fit left the window, grid estimates kept";
            out.push_back(feat);
            continue;
        }
        feat.center = fit.center;
        feat.linewidth = fit.width;
        feat.amplitude = fit.amplitude;
        feat.fit_residual = fit.rms_residual / std::max(std::abs(fit.amplitude), 1e-300);
        feat.accepted = feat.fit_residual <= residual_threshold;
        if (!feat.accepted) feat.note = "relative rms residual above threshold";
        out.push_back(feat);
    }

    std::sort(out.begin(), out.end(),
              [](const SpectralFeature& a, const SpectralFeature& b) { return a.center < b.center; });
    return out;
}

namespace {

double polariton_linewidth(double omega, double gamma) {
    model::CavityConfig config;
    config.omega = omega;
    config.probe_decay = gamma;
    config.probe_detuning = 0.0;
    const auto sp = polariton_spectrum(config);

    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : sp.energies)
        if (std::abs(e.real()) > 1e-9) best = std::min(best, -e.imag());
    if (std::isfinite(best)) return best;

    // overdamped regime: every eigenvalue sits on the imaginary axis; skip
    // the narrow probe-like line and report the cavity-like one
    std::array<double, 3> decays;
    for (int k = 0; k < 3; ++k) decays[k] = -sp.energies[k].imag();
    std::sort(decays.begin(), decays.end());
    return decays[1];
}

}  // namespace

LinewidthScan linewidth_vs_gamma(double omega, const SweepGrid& gamma_grid) {
    LinewidthScan scan;
    const auto gammas = gamma_grid.values();
    for (const double g : gammas)
        scan.points.emplace_back(g, polariton_linewidth(omega, g));

    std::size_t imin = 0;
    for (std::size_t i = 1; i < scan.points.size(); ++i)
        if (scan.points[i].second < scan.points[imin].second) imin = i;

    double lo = scan.points[imin > 0 ? imin - 1 : imin].first;
    double hi = scan.points[imin + 1 < scan.points.size() ? imin + 1 : imin].first;
    for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (polariton_linewidth(omega, m1) <= polariton_linewidth(omega, m2))
            hi = m2;
        else
            lo = m1;
    }
    scan.gamma_min = 0.5 * (lo + hi);
    return scan;
}

}  // namespace antipt::polaritons
