#pragma once

#include <vector>

#include "antipt/model.hpp"
#include "antipt/numerics.hpp"

namespace antipt::scattering {

/// Single-frequency scattering result at detuning delta (drive frame of the
/// mirror-atom frequency).
struct ScatteringPoint {
    double delta = 0.0;
    Complex r{0.0, 0.0};
    Complex t{1.0, 0.0};
    double R = 0.0;        // |r|^2
    double T = 1.0;        // |t|^2
    double phase_r = 0.0;  // Arg r
};

/// Uniform detuning (or parameter) grid.
struct SweepGrid {
    double min = -5.0;
    double max = 5.0;
    int count = 1001;

    std::vector<double> values() const;  // throws NumericError when malformed
};

/// Reflection and transmission amplitudes from the resolvent
/// G(delta) = (delta I - H_eff)^-1 of the chain, summed over waveguide
/// coupling phases. The global reflection sign is fixed so that
/// Arg r(0) = 0 for mirrors with positive level splitting.
ScatteringPoint scatter(const model::AtomChain& chain, double delta);

/// Closed-form reflection amplitude of the quarter-wavelength dimer:
/// two Lorentzians of opposite sign at the split scattering-state
/// frequencies +-W/2, W = 2(omega + 1).
Complex dimer_reflection_closed(double delta, double omega);

/// Dimer reflection on resonance as a function of the splitting W:
/// R0 = W^2 / (1 + W^2/4)^2.
double r0_closed(double w);

enum class R0Branch { single_peak, two_peak };

/// Splitting W that produces the requested on-resonance reflection,
/// W = 2 (1 -+ sqrt(1 - r0)) / sqrt(r0) for the single/two-peak branch.
double invert_r0(double r0, R0Branch branch);

std::vector<ScatteringPoint> sweep(const model::AtomChain& chain, const SweepGrid& grid);

}  // namespace antipt::scattering
