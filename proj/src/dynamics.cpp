#include "antipt/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace antipt::dynamics {

using model::AtomChain;
using numerics::CMatrix;

namespace {

struct SparseEntry {
    int row, col;
    Complex value;
};

// K = H - (i/2) sum_jk Gamma_jk s_j+ s_k-  on the full 2^N space, stored as
// triplets; the dissipator's recycling part is kept as (j, k, Gamma_jk).
struct LindbladOperators {
    int n_atoms = 0;
    int dim = 0;
    std::vector<SparseEntry> k_entries;
    struct Recycle {
        int j, k;
        double rate;
    };
    std::vector<Recycle> recycle;
};

LindbladOperators build_operators(const AtomChain& chain) {
    const auto data = model::lindblad_data(chain);
    const int n = chain.size();
    const int dim = 1 << n;

    LindbladOperators ops;
    ops.n_atoms = n;
    ops.dim = dim;

    for (int m = 0; m < dim; ++m) {
        Complex diag = 0.0;
        for (int j = 0; j < n; ++j)
            if (m & (1 << j))
                diag += Complex(data.coherent(j, j).real(),
                                -0.5 * data.collective_decay(j, j).real());
        if (diag != Complex(0.0, 0.0)) ops.k_entries.push_back({m, m, diag});

        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (j == k) continue;
                const Complex coeff(data.coherent(j, k).real(),
                                    -0.5 * data.collective_decay(j, k).real());
                if (coeff == Complex(0.0, 0.0)) continue;
                // s_j+ s_k- moves the excitation k -> j
                if ((m & (1 << k)) && !(m & (1 << j))) {
                    const int target = (m & ~(1 << k)) | (1 << j);
                    ops.k_entries.push_back({target, m, coeff});
                }
            }
    }

    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const double rate = data.collective_decay(j, k).real();
            if (rate != 0.0) ops.recycle.push_back({j, k, rate});
        }
    return ops;
}

// rho' = -i (K rho - rho K^H) + sum Gamma_jk s_k- rho s_j+
void derivative(const LindbladOperators& ops, const CMatrix& rho, CMatrix& out) {
    const int dim = ops.dim;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) out(i, j) = 0.0;

    for (const auto& e : ops.k_entries) {
        const Complex v = -kImag * e.value;
        for (int j = 0; j < dim; ++j) out(e.row, j) += v * rho(e.col, j);
        const Complex vc = kImag * std::conj(e.value);
        for (int i = 0; i < dim; ++i) out(i, e.row) += vc * rho(i, e.col);
    }
    for (const auto& r : ops.recycle) {
        const int bj = 1 << r.j;
        const int bk = 1 << r.k;
        for (int m = 0; m < dim; ++m) {
            if (!(m & bk)) continue;
            const int row = m & ~bk;
            for (int nn = 0; nn < dim; ++nn) {
                if (!(nn & bj)) continue;
                out(row, nn & ~bj) += r.rate * rho(m, nn);
            }
        }
    }
}

TrajectoryPoint sample_density(const LindbladOperators& ops, const CMatrix& rho, double t) {
    TrajectoryPoint p;
    p.time = t;
    p.populations.assign(ops.n_atoms, 0.0);
    for (int m = 0; m < ops.dim; ++m) {
        const double weight = rho(m, m).real();
        for (int j = 0; j < ops.n_atoms; ++j)
            if (m & (1 << j)) p.populations[j] += weight;
    }
    for (const double v : p.populations) p.total_excitation += v;
    p.trace = rho.trace().real();
    return p;
}

}  // namespace

std::vector<TrajectoryPoint> evolve_pure(const AtomChain& chain,
                                         const std::vector<Complex>& initial,
                                         const std::vector<double>& times) {
    chain.validate();
    const int n = chain.size();
    if (static_cast<int>(initial.size()) != n)
        throw NumericError("evolve_pure: state dimension mismatch");
    if (std::abs(numerics::norm2(initial) - 1.0) > 1e-6)
        throw NumericError("evolve_pure: initial state must be normalized");

    const CMatrix h = model::effective_hamiltonian(chain);

    bool eig_ok = false;
    numerics::Spectrum sp;
    try {
        sp = numerics::eig(h);
        eig_ok = sp.all_normalized();
    } catch (const NumericError&) {
        eig_ok = false;
    }
    std::vector<Complex> amps(n);
    if (eig_ok)
        for (int k = 0; k < n; ++k) amps[k] = numerics::dot_conj(sp.left[k], initial);

    std::vector<TrajectoryPoint> out;
    out.reserve(times.size());
    for (const double t : times) {
        if (t < 0.0) throw NumericError("evolve_pure: negative time");
        std::vector<Complex> psi;
        if (eig_ok) {
            psi.assign(n, Complex(0.0, 0.0));
            for (int k = 0; k < n; ++k) {
                const Complex a = amps[k] * std::exp(-kImag * sp.values[k] * t);
                for (int i = 0; i < n; ++i) psi[i] += a * sp.right[k][i];
            }
        } else {
            psi = numerics::expm_times(h, initial, t);
        }
        TrajectoryPoint p;
        p.time = t;
        p.populations.resize(n);
        for (int i = 0; i < n; ++i) {
            p.populations[i] = std::norm(psi[i]);
            p.total_excitation += p.populations[i];
        }
        out.push_back(std::move(p));
    }
    return out;
}

CMatrix single_excitation_density(int n_atoms, const std::vector<Complex>& amplitudes) {
    if (static_cast<int>(amplitudes.size()) != n_atoms)
        throw NumericError("single_excitation_density: amplitude count mismatch");
    const int dim = 1 << n_atoms;
    CMatrix rho(dim);
    for (int j = 0; j < n_atoms; ++j)
        for (int k = 0; k < n_atoms; ++k)
            rho(1 << j, 1 << k) = amplitudes[j] * std::conj(amplitudes[k]);
    return rho;
}

std::vector<TrajectoryPoint> evolve_lindblad(const AtomChain& chain, const CMatrix& initial,
                                             const std::vector<double>& times, double dt,
                                             CMatrix* final_state) {
    chain.validate();
    const int n = chain.size();
    if (n > 5) throw NumericError("evolve_lindblad: at most 5 atoms (dense 2^N storage)");
    if (!(dt > 0.0) || dt > 0.01)
        throw NumericError("evolve_lindblad: step must lie in (0, 0.01]");
    const int dim = 1 << n;
    if (initial.dim() != dim) throw NumericError("evolve_lindblad: density matrix dimension");
    if (std::abs(initial.trace() - Complex(1.0, 0.0)) > 1e-8)
        throw NumericError("evolve_lindblad: initial state must have unit trace");

    const auto ops = build_operators(chain);

    CMatrix rho = initial;
    CMatrix k1(dim), k2(dim), k3(dim), k4(dim), work(dim);
    double t = 0.0;
    double prev = -1.0;

    std::vector<TrajectoryPoint> out;
    out.reserve(times.size());
    for (const double target : times) {
        if (target < prev) throw NumericError("evolve_lindblad: times must be non-decreasing");
        prev = target;
        const long steps = std::lround((target - t) / dt);
        for (long s = 0; s < steps; ++s) {
            derivative(ops, rho, k1);
            work = rho;
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) work(i, j) += 0.5 * dt * k1(i, j);
            derivative(ops, work, k2);
            work = rho;
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) work(i, j) += 0.5 * dt * k2(i, j);
            derivative(ops, work, k3);
            work = rho;
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) work(i, j) += dt * k3(i, j);
            derivative(ops, work, k4);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    rho(i, j) += dt / 6.0 * (k1(i, j) + 2.0 * k2(i, j) + 2.0 * k3(i, j) + k4(i, j));
            t += dt;
        }
        if (std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-6)
            throw NumericError("evolve_lindblad: trace drift above 1e-6, reduce dt");
        out.push_back(sample_density(ops, rho, t));
    }
    if (final_state != nullptr) *final_state = rho;
    return out;
}

std::vector<TrajectoryPoint> rabi_experiment(const model::CavityConfig& config, double gamma_prime,
                                             double t_max, int samples) {
    if (!(t_max > 0.0) || samples < 2) throw NumericError("rabi_experiment: bad time grid");
    model::CavityConfig cfg = config;
    cfg.include_probe = true;
    cfg.free_space_decay = gamma_prime;
    const auto chain = model::build_cavity(cfg);

    std::vector<Complex> psi0(chain.size(), Complex(0.0, 0.0));
    psi0.back() = 1.0;  // probe is the last atom in the chain

    std::vector<double> times(samples);
    for (int i = 0; i < samples; ++i) times[i] = t_max * i / (samples - 1);
    return evolve_pure(chain, psi0, times);
}

}  // namespace antipt::dynamics
