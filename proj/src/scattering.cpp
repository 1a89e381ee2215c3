#include "antipt/scattering.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace antipt::scattering {

using model::AtomChain;
using numerics::CMatrix;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

std::vector<double> SweepGrid::values() const {
    if (!(min < max)) throw NumericError("SweepGrid: min must be below max");
    if (count < 2) throw NumericError("SweepGrid: need at least two points");
    std::vector<double> v(count);
    const double step = (max - min) / (count - 1);
    for (int i = 0; i < count; ++i) v[i] = min + step * i;
    v.back() = max;
    return v;
}

ScatteringPoint scatter(const AtomChain& chain, double delta) {
    chain.validate();
    const int n = chain.size();
    const CMatrix h = model::effective_hamiltonian(chain);

    CMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = ((i == j) ? Complex(delta, 0.0) : 0.0) - h(i, j);

    // waveguide coupling phases of the right- and left-moving channels
    std::vector<Complex> fwd(n), bwd(n);
    for (int j = 0; j < n; ++j) {
        const double root = std::sqrt(chain.atoms[j].waveguide_decay);
        fwd[j] = root * std::exp(kImag * (kTwoPi * chain.atoms[j].position));
        bwd[j] = root * std::exp(-kImag * (kTwoPi * chain.atoms[j].position));
    }

    std::vector<Complex> g_fwd;
    try {
        g_fwd = numerics::solve(m, fwd);
    } catch (const NumericError&) {
        throw NumericError("scatter: resolvent singular at delta = " + std::to_string(delta) +
                           " (real eigenvalue with zero decay)");
    }

    ScatteringPoint p;
    p.delta = delta;
    p.t = 1.0 - kImag * numerics::dot_unconj(bwd, g_fwd);
    p.r = kImag * numerics::dot_unconj(fwd, g_fwd);
    p.R = std::norm(p.r);
    p.T = std::norm(p.t);
    p.phase_r = std::arg(p.r);
    return p;
}

Complex dimer_reflection_closed(double delta, double omega) {
    const double w = 2.0 * (omega + 1.0);
    return 1.0 / (Complex(delta + 0.5 * w, 1.0)) - 1.0 / (Complex(delta - 0.5 * w, 1.0));
}

double r0_closed(double w) {
    const double q = 1.0 + 0.25 * w * w;
    return w * w / (q * q);
}

double invert_r0(double r0, R0Branch branch) {
    if (!(r0 > 0.0) || !(r0 <= 1.0))
        throw NumericError("invert_r0: reflection must lie in (0, 1]");
    const double root = std::sqrt(std::max(0.0, 1.0 - r0));
    const double sign = (branch == R0Branch::single_peak) ? -1.0 : 1.0;
    return 2.0 * (1.0 + sign * root) / std::sqrt(r0);
}

std::vector<ScatteringPoint> sweep(const AtomChain& chain, const SweepGrid& grid) {
    const auto deltas = grid.values();
    std::vector<ScatteringPoint> out;
    out.reserve(deltas.size());
    for (const double d : deltas) out.push_back(scatter(chain, d));
    return out;
}

}  // namespace antipt::scattering
