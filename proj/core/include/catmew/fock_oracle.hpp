#pragma once

#include <complex>
#include <span>
#include <vector>

#include "catmew/analytic.hpp"
#include "catmew/errors.hpp"

namespace catmew {

/// Mirror state as Fock-basis amplitudes c_0..c_{D-1}.
struct MirrorFockState {
    std::vector<std::complex<double>> amps;

    int dim() const noexcept { return static_cast<int>(amps.size()); }
    double norm_sq() const noexcept;
};

MirrorFockState vacuum_state(int dim);

/// Coherent state built by the stable recurrence c_{n+1} = c_n alpha/sqrt(n+1).
/// Throws truncation_error when the captured norm^2 falls below 1 - 1e-10.
MirrorFockState coherent_state(std::complex<double> alpha, int dim);

/// <bra|ket>; dimensions must match.
std::complex<double> inner_product(const MirrorFockState& bra,
                                   const MirrorFockState& ket);

/// Truncation dimension sized so a coherent state of amplitude up to 2*kappa
/// keeps Poisson tail mass below 1e-12.
int recommended_dim(double kappa);

enum class Propagator {
    eigendecomposition,
    fixed_step_fourth_order,
};

struct OracleConfig {
    int dim = 2;
    Propagator propagator = Propagator::eigendecomposition;
    int steps_per_period = 1000;

    void validate() const;
    static OracleConfig for_kappa(
        double kappa, Propagator prop = Propagator::eigendecomposition);
};

/// Real symmetric tridiagonal Hamiltonian in the Fock basis; diag has size D,
/// sub has size D-1. Both propagators rely on this structure.
struct TridiagonalHamiltonian {
    std::vector<double> diag;
    std::vector<double> sub;
};

/// Arm with the movable mirror: diag n, sub -kappa*sqrt(n+1).
TridiagonalHamiltonian coupled_arm_hamiltonian(double kappa, int dim);

/// Arm without coupling: diag n, sub 0.
TridiagonalHamiltonian free_arm_hamiltonian(int dim);

/// Applies exp(-i H theta) to the initial state with the configured
/// propagator. cfg.dim must equal the state dimension.
MirrorFockState propagate(const TridiagonalHamiltonian& h,
                          const MirrorFockState& initial, double theta,
                          const OracleConfig& cfg);

/// Mirror states entangled with the two photon paths, with the photon branch
/// amplitudes. Global phases live in the amplitude vectors; read them off the
/// vacuum component.
struct BranchPair {
    MirrorFockState branch_a;
    MirrorFockState branch_b;
    std::complex<double> weight_a;
    std::complex<double> weight_b;
    double theta;
};

/// Evolves vacuum under both arm Hamiltonians for dimensionless time theta.
/// Throws truncation_error when either branch leaks more than 1e-8 of norm^2.
BranchPair evolve_branches(double kappa, double theta, const OracleConfig& cfg);

/// Recombines the branches through the balanced beamsplitter with readout
/// phase chi and reads out all observables from the port amplitudes.
DetectionRecord beamsplitter_output(const BranchPair& pair, double chi);

struct ComparisonRow {
    double theta;
    double dev_i_c;
    double dev_i_d;
    double dev_coherence;
    double dev_cross;
};

struct ComparisonReport {
    double max_dev_i_c = 0.0;
    double max_dev_i_d = 0.0;
    double max_dev_coherence = 0.0;
    double max_dev_cross = 0.0;
    std::vector<ComparisonRow> rows;

    double max_deviation() const noexcept;
};

/// Evolves and recombines at every grid point and reports absolute deviations
/// from the closed forms. Deterministic for identical inputs.
ComparisonReport compare_with_analytic(double kappa,
                                       std::span<const double> theta_grid,
                                       double chi, const OracleConfig& cfg);

} // namespace catmew
