#pragma once

#include <vector>

#include "antipt/model.hpp"
#include "antipt/numerics.hpp"

namespace antipt::dynamics {

/// One time sample: per-atom excited-state populations (chain order) and
/// their sum. trace reports the density-matrix trace for Lindblad runs and
/// stays 1 for pure-state evolution.
struct TrajectoryPoint {
    double time = 0.0;
    std::vector<double> populations;
    double total_excitation = 0.0;
    double trace = 1.0;
};

/// Non-Hermitian single-excitation evolution psi(t) = exp(-i H_eff t) psi(0),
/// sampled at the requested times. Exact within the single-excitation sector
/// because every quantum jump exits to the global ground state.
std::vector<TrajectoryPoint> evolve_pure(const model::AtomChain& chain,
                                         const std::vector<Complex>& initial,
                                         const std::vector<double>& times);

/// |psi><psi| on the full 2^N space for a single-excitation amplitude vector.
numerics::CMatrix single_excitation_density(int n_atoms, const std::vector<Complex>& amplitudes);

/// Fixed-step RK4 integration of the collective master equation
///   rho' = -i [H, rho]
///          + sum_jk (Gamma_jk / 2) (2 s_k- rho s_j+ - s_j+ s_k- rho - rho s_j+ s_k-)
/// with H and Gamma_jk assembled from the chain. Sample times are snapped to
/// the dt lattice; the reported time is the lattice time reached. When
/// final_state is given it receives the density matrix at the last sample.
std::vector<TrajectoryPoint> evolve_lindblad(const model::AtomChain& chain,
                                             const numerics::CMatrix& initial,
                                             const std::vector<double>& times, double dt = 0.005,
                                             numerics::CMatrix* final_state = nullptr);

/// Probe initialized excited in the cavity, free evolution; gamma_prime is
/// the uniform free-space loss during the run.
std::vector<TrajectoryPoint> rabi_experiment(const model::CavityConfig& config, double gamma_prime,
                                             double t_max, int samples = 1501);

}  // namespace antipt::dynamics
