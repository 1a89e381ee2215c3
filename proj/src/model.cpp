#include "antipt/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <utility>

namespace antipt::model {

using numerics::CMatrix;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// direct-coupling lookup as a dense symmetric matrix of strengths
std::vector<double> coupling_table(const AtomChain& chain) {
    const int n = chain.size();
    std::vector<double> table(static_cast<std::size_t>(n) * n, 0.0);
    for (const auto& c : chain.direct_couplings) {
        table[static_cast<std::size_t>(c.i) * n + c.j] = c.strength;
        table[static_cast<std::size_t>(c.j) * n + c.i] = c.strength;
    }
    return table;
}

}  // namespace

void AtomChain::validate() const {
    const int n = size();
    if (n == 0) throw NumericError("AtomChain: empty chain");
    for (const auto& a : atoms) {
        if (!std::isfinite(a.position)) throw NumericError("AtomChain: non-finite position");
        if (!(a.waveguide_decay >= 0.0) || !(a.free_space_decay >= 0.0))
            throw NumericError("AtomChain: negative decay rate");
        if (!std::isfinite(a.detuning)) throw NumericError("AtomChain: non-finite detuning");
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& c : direct_couplings) {
        if (c.i < 0 || c.i >= n || c.j < 0 || c.j >= n)
            throw NumericError("AtomChain: direct coupling index out of range");
        if (c.i == c.j) throw NumericError("AtomChain: direct coupling needs two distinct atoms");
        const std::pair<int, int> key{std::min(c.i, c.j), std::max(c.i, c.j)};
        if (!seen.insert(key).second)
            throw NumericError("AtomChain: duplicate direct coupling for an atom pair");
        if (!std::isfinite(c.strength)) throw NumericError("AtomChain: non-finite coupling");
    }
}

AtomChain build_dimer(double omega) {
    AtomChain chain;
    chain.atoms = {{0.0, 1.0, 0.0, 0.0}, {0.25, 1.0, 0.0, 0.0}};
    chain.direct_couplings = {{0, 1, omega}};
    chain.validate();
    return chain;
}

AtomChain build_cavity(const CavityConfig& config) {
    AtomChain chain;
    for (const double x : kMirrorPositions)
        chain.atoms.push_back({x, 1.0, config.free_space_decay, 0.0});
    chain.direct_couplings = {{0, 1, config.omega}, {2, 3, config.omega}};

    if (config.include_probe) {
        if (!(config.probe_position > 0.0) || !(config.probe_position < 1.0))
            throw NumericError("build_cavity: probe_position must lie strictly inside (0, 1)");
        for (const double x : kMirrorPositions)
            if (config.probe_position == x)
                throw NumericError("build_cavity: probe coincides with a mirror atom");
        chain.atoms.push_back({config.probe_position, config.probe_decay,
                               config.free_space_decay, config.probe_detuning});
    }
    chain.validate();
    return chain;
}

CMatrix effective_hamiltonian(const AtomChain& chain) {
    chain.validate();
    const int n = chain.size();
    const auto table = coupling_table(chain);

    CMatrix h(n);
    for (int j = 0; j < n; ++j) {
        const auto& aj = chain.atoms[j];
        h(j, j) = Complex(aj.detuning, -(aj.waveguide_decay + aj.free_space_decay));
        for (int k = j + 1; k < n; ++k) {
            const auto& ak = chain.atoms[k];
            const double phase = kTwoPi * std::abs(aj.position - ak.position);
            const Complex val = table[static_cast<std::size_t>(j) * n + k] -
                                kImag * std::sqrt(aj.waveguide_decay * ak.waveguide_decay) *
                                    std::exp(kImag * phase);
            h(j, k) = val;
            h(k, j) = val;
        }
    }
    return h;
}

LindbladData lindblad_data(const AtomChain& chain) {
    chain.validate();
    const int n = chain.size();
    const auto table = coupling_table(chain);

    CMatrix j_mat(n);
    CMatrix g_mat(n);
    for (int j = 0; j < n; ++j) {
        const auto& aj = chain.atoms[j];
        j_mat(j, j) = aj.detuning;
        g_mat(j, j) = 2.0 * (aj.waveguide_decay + aj.free_space_decay);
        for (int k = j + 1; k < n; ++k) {
            const auto& ak = chain.atoms[k];
            const double phase = kTwoPi * std::abs(aj.position - ak.position);
            const double root = std::sqrt(aj.waveguide_decay * ak.waveguide_decay);
            const double jv = table[static_cast<std::size_t>(j) * n + k] + root * std::sin(phase);
            const double gv = 2.0 * root * std::cos(phase);
            j_mat(j, k) = jv;
            j_mat(k, j) = jv;
            g_mat(j, k) = gv;
            g_mat(k, j) = gv;
        }
    }
    return {j_mat, g_mat};
}

}  // namespace antipt::model
