#pragma once

#include <array>
#include <utility>
#include <vector>

#include "antipt/model.hpp"
#include "antipt/numerics.hpp"
#include "antipt/scattering.hpp"

namespace antipt::nonhermitian {

/// One eigenpair of the four-atom cavity.
struct Mode {
    Complex value{0.0, 0.0};
    std::vector<Complex> right;
    std::vector<Complex> left;
    double condition = 0.0;
    bool bio_normalized = false;

    double decay() const { return -value.imag(); }
};

/// The symmetry-protected slow/fast supermode pair plus the two remaining
/// cavity modes.
struct SupermodeSet {
    Mode psi_minus;  // slow decay
    Mode psi_plus;   // fast decay
    std::array<Mode, 2> h2_modes;
    double classification_tolerance = 0.0;
};

/// Probe couplings to the protected supermodes: g to the slow mode, v to the
/// fast mode, left/right variants of each.
struct ProbeCouplings {
    Complex g_l{0.0, 0.0};
    Complex g_r{0.0, 0.0};
    Complex v_l{0.0, 0.0};
    Complex v_r{0.0, 0.0};
};

/// Exceptional points found on a splitting scan.
struct EpReport {
    std::vector<double> locations;  // W values, sorted
    std::vector<double> coalescence_measure;
    std::vector<std::pair<double, double>> brackets;
};

struct BlockDecomposition {
    numerics::CMatrix h1;         // anti-PT protected 2x2 block
    numerics::CMatrix h2;         // remaining 2x2 block
    numerics::CMatrix transform;  // orthogonal u with u Hc u^T = diag(h1, h2)
};

/// Four-atom cavity Hamiltonian assembled from the Pauli-product form
/// (independent of the geometric route in model::effective_hamiltonian).
numerics::CMatrix build_hc(double omega);

BlockDecomposition block_decompose(double omega);

/// True when sigma_x conj(h) sigma_x = -h entrywise within 1e-12 (2x2 only).
bool anti_pt_check(const numerics::CMatrix& h);

SupermodeSet supermodes(double omega);

/// Locates eigenvalue coalescence of either 2x2 block by bisection on the
/// block discriminants over the given splitting range.
EpReport find_exceptional_points(const scattering::SweepGrid& w_range);

/// Probe couplings at the configured probe position. Right-eigenvector
/// phases are fixed so that g_r is real non-negative and v_r purely
/// imaginary; left couplings follow from biorthogonal normalization.
/// Refuses configurations within 1e-6 (in omega) of an exceptional point.
ProbeCouplings probe_couplings(const model::CavityConfig& config);

/// Slow-supermode coupling sampled against probe position, with the mode
/// phase anchored once at x_p = 1/4.
std::vector<std::pair<double, Complex>> coupling_vs_position(double omega, double gamma,
                                                             const scattering::SweepGrid& grid);

/// Coupling factor eta = g_r^2 / (gamma * Gamma) = W in internal units.
double coupling_factor(double w);
double coupling_factor_from_r0(double r0, scattering::R0Branch branch);

/// On-resonance mirror reflection separating the strong-coupling window,
/// evaluated (not hard-coded) at both window edges.
double reflection_threshold();

}  // namespace antipt::nonhermitian
