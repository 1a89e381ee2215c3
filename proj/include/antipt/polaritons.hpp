#pragma once

#include <array>
#include <string>
#include <vector>

#include "antipt/model.hpp"
#include "antipt/nonhermitian.hpp"
#include "antipt/numerics.hpp"
#include "antipt/scattering.hpp"

namespace antipt::polaritons {

/// Cavity-probe system reduced to the slow supermode, the fast supermode and
/// the probe: diag(-i G_minus, -i G_plus, dw - i gamma) with the left/right
/// couplings in the (0,2)/(1,2) and (2,0)/(2,1) slots.
struct EffectiveThreeLevel {
    numerics::CMatrix matrix;
    double gamma_minus = 0.0;
    double gamma_plus = 0.0;
    nonhermitian::ProbeCouplings couplings;
};

struct PolaritonSpectrum {
    std::array<Complex, 3> energies;  // sorted by (Re, Im) ascending
    std::array<bool, 3> dark;         // |Im E| <= 1e-9
};

/// One fitted transmission feature.
struct SpectralFeature {
    enum class Kind { peak, antiresonance };
    Kind kind = Kind::peak;
    double center = 0.0;
    double linewidth = 0.0;  // half width at half maximum of the intensity
    double amplitude = 0.0;
    double fit_residual = 0.0;  // rms residual relative to the amplitude
    bool accepted = false;
    std::string note;
};

EffectiveThreeLevel build_three_level(const model::CavityConfig& config);

/// Three eigenvalues of the reduced system via the cubic-root solver on its
/// characteristic polynomial.
PolaritonSpectrum polariton_spectrum(const model::CavityConfig& config);

/// Locates transmission extrema and fits a three-parameter Lorentzian to
/// each within a window of a few linewidths. Features whose relative rms fit
/// residual exceeds residual_threshold are kept but flagged as rejected.
std::vector<SpectralFeature> extract_features(const std::vector<scattering::ScatteringPoint>& sweep,
                                              double residual_threshold = 0.1);

struct LinewidthScan {
    std::vector<std::pair<double, double>> points;  // (gamma, linewidth)
    double gamma_min = 0.0;                         // refined location of the minimum
};

/// Decay rate of the least-damped oscillating polariton against the probe
/// decay, with the grid minimum refined by ternary search.
LinewidthScan linewidth_vs_gamma(double omega, const scattering::SweepGrid& gamma_grid);

}  // namespace antipt::polaritons
