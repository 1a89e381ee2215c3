#pragma once

#include <array>
#include <vector>

#include "antipt/numerics.hpp"

namespace antipt::model {

/// One emitter on the waveguide. Positions are measured in units of the
/// resonance wavelength, all rates in units of the mirror-atom waveguide
/// decay (the internal unit system: Gamma = 1, lambda0 = 1, time 1/Gamma).
struct AtomSpec {
    double position = 0.0;
    double waveguide_decay = 1.0;
    double free_space_decay = 0.0;
    double detuning = 0.0;
};

struct DirectCoupling {
    int i = 0;
    int j = 0;
    double strength = 0.0;
};

/// Ordered emitters plus direct exchange couplings. The physical system
/// description every other module consumes.
struct AtomChain {
    std::vector<AtomSpec> atoms;
    std::vector<DirectCoupling> direct_couplings;

    int size() const { return static_cast<int>(atoms.size()); }
    void validate() const;  // throws NumericError on malformed data
};

/// Four-atom cavity plus optional probe. omega is the intra-mirror atomic
/// coupling, probe_decay/probe_detuning the probe's gamma and delta-omega,
/// free_space_decay a nonradiative channel applied uniformly to every atom.
struct CavityConfig {
    double omega = 0.0;
    double probe_decay = 0.2;
    double probe_detuning = 0.0;
    double free_space_decay = 0.0;
    double probe_position = 0.25;  // strictly inside (0, 1)
    bool include_probe = true;
};

/// Coherent matrix J and collective decay matrix Gamma_jk of the master
/// equation; both real symmetric, and J - (i/2) Gamma reassembles the
/// effective non-Hermitian Hamiltonian entrywise.
struct LindbladData {
    numerics::CMatrix coherent;
    numerics::CMatrix collective_decay;
};

/// Quarter-wavelength atom dimer: atoms at {0, 1/4} with unit waveguide
/// decay and direct coupling omega.
AtomChain build_dimer(double omega);

/// Two quarter-wavelength dimers a wavelength apart (mirror atoms at
/// {-1/4, 0, 1, 5/4}) plus the optional probe.
AtomChain build_cavity(const CavityConfig& config);

/// Single-excitation effective non-Hermitian Hamiltonian:
///   H[j,j] = detuning_j - i (waveguide_decay_j + free_space_decay_j)
///   H[j,k] = Omega_jk - i sqrt(G_j G_k) exp(i 2 pi |x_j - x_k|),  j != k
/// with G the waveguide decay only. Complex symmetric by construction.
numerics::CMatrix effective_hamiltonian(const AtomChain& chain);

LindbladData lindblad_data(const AtomChain& chain);

inline constexpr std::array<double, 4> kMirrorPositions{-0.25, 0.0, 1.0, 1.25};

}  // namespace antipt::model
