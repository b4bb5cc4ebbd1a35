#include "catmew/fock_oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace catmew {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double construction_tol = 1e-10;
constexpr double evolution_tol = 1e-8;

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw std::domain_error(std::string(name) + " must be finite");
    }
}

void require_dim(int dim) {
    if (dim < 2) {
        throw std::invalid_argument("dim must be at least 2");
    }
}

using ComplexVector = Eigen::VectorXcd;

ComplexVector to_eigen(const MirrorFockState& s) {
    return Eigen::Map<const ComplexVector>(s.amps.data(),
                                           static_cast<Eigen::Index>(s.amps.size()));
}

MirrorFockState from_eigen(const ComplexVector& v) {
    MirrorFockState s;
    s.amps.assign(v.data(), v.data() + v.size());
    return s;
}

/// y = H x for tridiagonal H; O(D) per application.
ComplexVector apply_tridiagonal(const TridiagonalHamiltonian& h,
                                const ComplexVector& x) {
    const Eigen::Index n = x.size();
    ComplexVector y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        std::complex<double> acc = h.diag[static_cast<std::size_t>(i)] * x[i];
        if (i > 0) {
            acc += h.sub[static_cast<std::size_t>(i - 1)] * x[i - 1];
        }
        if (i + 1 < n) {
            acc += h.sub[static_cast<std::size_t>(i)] * x[i + 1];
        }
        y[i] = acc;
    }
    return y;
}

ComplexVector propagate_eigendecomposition(const TridiagonalHamiltonian& h,
                                           const ComplexVector& psi0,
                                           double theta) {
    const Eigen::Index n = psi0.size();
    Eigen::VectorXd diag =
        Eigen::Map<const Eigen::VectorXd>(h.diag.data(), n);
    Eigen::VectorXd sub =
        Eigen::Map<const Eigen::VectorXd>(h.sub.data(), n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("tridiagonal eigendecomposition failed");
    }
    const Eigen::MatrixXd& vectors = solver.eigenvectors();
    ComplexVector modal = vectors.transpose() * psi0;
    for (Eigen::Index k = 0; k < n; ++k) {
        modal[k] *= std::polar(1.0, -solver.eigenvalues()[k] * theta);
    }
    return vectors * modal;
}

ComplexVector propagate_fixed_step(const TridiagonalHamiltonian& h,
                                   const ComplexVector& psi0, double theta,
                                   int steps_per_period) {
    // Classic 4th-order stability bound: |lambda| h must stay below ~2.83 for
    // the purely imaginary spectrum of -iH. Gershgorin bounds |lambda|.
    double radius = 0.0;
    const std::size_t n = h.diag.size();
    for (std::size_t i = 0; i < n; ++i) {
        double row = std::abs(h.diag[i]);
        if (i > 0) row += std::abs(h.sub[i - 1]);
        if (i + 1 < n) row += std::abs(h.sub[i]);
        radius = std::max(radius, row);
    }
    const double max_step = two_pi / steps_per_period;
    if (radius * max_step > 2.78) {
        std::ostringstream msg;
        msg << "steps_per_period=" << steps_per_period
            << " is unstable for dim=" << n
            << " (spectral bound " << radius << "); increase steps_per_period";
        throw std::invalid_argument(msg.str());
    }

    const long steps =
        std::max(1L, static_cast<long>(
                         std::ceil(steps_per_period * std::abs(theta) / two_pi)));
    const double step = theta / static_cast<double>(steps);
    const std::complex<double> minus_i(0.0, -1.0);

    ComplexVector psi = psi0;
    for (long s = 0; s < steps; ++s) {
        const ComplexVector k1 = minus_i * apply_tridiagonal(h, psi);
        const ComplexVector k2 =
            minus_i * apply_tridiagonal(h, psi + 0.5 * step * k1);
        const ComplexVector k3 =
            minus_i * apply_tridiagonal(h, psi + 0.5 * step * k2);
        const ComplexVector k4 =
            minus_i * apply_tridiagonal(h, psi + step * k3);
        psi += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return psi;
}

void check_evolved_norm(const MirrorFockState& state, const char* branch,
                        double kappa, double theta) {
    const double norm_sq = state.norm_sq();
    if (std::abs(norm_sq - 1.0) > evolution_tol) {
        std::ostringstream msg;
        msg << branch << " leaked norm during evolution (kappa=" << kappa
            << ", theta=" << theta << ", dim=" << state.dim()
            << ", norm^2=" << norm_sq << "); increase dim";
        throw truncation_error(msg.str(), norm_sq);
    }
}

} // namespace

double MirrorFockState::norm_sq() const noexcept {
    double acc = 0.0;
    for (const auto& c : amps) {
        acc += std::norm(c);
    }
    return acc;
}

MirrorFockState vacuum_state(int dim) {
    require_dim(dim);
    MirrorFockState s;
    s.amps.assign(static_cast<std::size_t>(dim), {0.0, 0.0});
    s.amps[0] = 1.0;
    return s;
}

MirrorFockState coherent_state(std::complex<double> alpha, int dim) {
    require_dim(dim);
    require_finite(alpha.real(), "alpha");
    require_finite(alpha.imag(), "alpha");
    MirrorFockState s;
    s.amps.resize(static_cast<std::size_t>(dim));
    std::complex<double> c = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n < dim; ++n) {
        s.amps[static_cast<std::size_t>(n)] = c;
        c *= alpha / std::sqrt(static_cast<double>(n + 1));
    }
    const double norm_sq = s.norm_sq();
    if (norm_sq < 1.0 - construction_tol) {
        std::ostringstream msg;
        msg << "dim=" << dim << " too small for coherent state |alpha|="
            << std::abs(alpha) << " (norm^2=" << norm_sq << ")";
        throw truncation_error(msg.str(), norm_sq);
    }
    return s;
}

std::complex<double> inner_product(const MirrorFockState& bra,
                                   const MirrorFockState& ket) {
    if (bra.dim() != ket.dim()) {
        throw std::invalid_argument("inner_product requires equal dimensions");
    }
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t n = 0; n < bra.amps.size(); ++n) {
        acc += std::conj(bra.amps[n]) * ket.amps[n];
    }
    return acc;
}

int recommended_dim(double kappa) {
    require_finite(kappa, "kappa");
    if (kappa < 0.0) {
        throw std::domain_error("kappa must be >= 0");
    }
    const double alpha_max = 2.0 * kappa;
    const int base = static_cast<int>(std::ceil(alpha_max * alpha_max));
    const int tail =
        std::max(10, static_cast<int>(std::ceil(10.0 * alpha_max)));
    return std::max(2, base + tail);
}

void OracleConfig::validate() const {
    if (dim < 2) {
        throw std::invalid_argument("oracle dim must be at least 2");
    }
    if (steps_per_period < 100) {
        throw std::invalid_argument("steps_per_period must be at least 100");
    }
}

OracleConfig OracleConfig::for_kappa(double kappa, Propagator prop) {
    OracleConfig cfg;
    cfg.dim = recommended_dim(kappa);
    cfg.propagator = prop;
    return cfg;
}

TridiagonalHamiltonian coupled_arm_hamiltonian(double kappa, int dim) {
    require_dim(dim);
    require_finite(kappa, "kappa");
    TridiagonalHamiltonian h;
    h.diag.resize(static_cast<std::size_t>(dim));
    h.sub.resize(static_cast<std::size_t>(dim - 1));
    for (int n = 0; n < dim; ++n) {
        h.diag[static_cast<std::size_t>(n)] = static_cast<double>(n);
    }
    for (int n = 0; n + 1 < dim; ++n) {
        h.sub[static_cast<std::size_t>(n)] =
            -kappa * std::sqrt(static_cast<double>(n + 1));
    }
    return h;
}

TridiagonalHamiltonian free_arm_hamiltonian(int dim) {
    return coupled_arm_hamiltonian(0.0, dim);
}

MirrorFockState propagate(const TridiagonalHamiltonian& h,
                          const MirrorFockState& initial, double theta,
                          const OracleConfig& cfg) {
    cfg.validate();
    require_finite(theta, "theta");
    if (initial.dim() != cfg.dim ||
        h.diag.size() != static_cast<std::size_t>(cfg.dim) ||
        h.sub.size() + 1 != static_cast<std::size_t>(cfg.dim)) {
        throw std::invalid_argument(
            "propagate requires matching state, Hamiltonian, and cfg.dim");
    }
    const ComplexVector psi0 = to_eigen(initial);
    switch (cfg.propagator) {
    case Propagator::eigendecomposition:
        return from_eigen(propagate_eigendecomposition(h, psi0, theta));
    case Propagator::fixed_step_fourth_order:
        return from_eigen(
            propagate_fixed_step(h, psi0, theta, cfg.steps_per_period));
    }
    throw std::invalid_argument("unknown propagator");
}

BranchPair evolve_branches(double kappa, double theta,
                           const OracleConfig& cfg) {
    require_finite(kappa, "kappa");
    if (kappa < 0.0) {
        throw std::domain_error("kappa must be >= 0");
    }
    require_finite(theta, "theta");
    cfg.validate();

    const MirrorFockState vacuum = vacuum_state(cfg.dim);
    BranchPair pair;
    pair.branch_a =
        propagate(coupled_arm_hamiltonian(kappa, cfg.dim), vacuum, theta, cfg);
    pair.branch_b =
        propagate(free_arm_hamiltonian(cfg.dim), vacuum, theta, cfg);
    pair.weight_a = 1.0 / std::numbers::sqrt2;
    pair.weight_b = 1.0 / std::numbers::sqrt2;
    pair.theta = theta;

    check_evolved_norm(pair.branch_a, "branch_a", kappa, theta);
    check_evolved_norm(pair.branch_b, "branch_b", kappa, theta);
    return pair;
}

DetectionRecord beamsplitter_output(const BranchPair& pair, double chi) {
    require_finite(chi, "chi");
    if (pair.branch_a.dim() != pair.branch_b.dim()) {
        throw std::invalid_argument("branch dimensions must match");
    }
    const std::complex<double> phase = std::polar(1.0, chi);
    const std::complex<double> i_unit(0.0, 1.0);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    const std::complex<double> wa = inv_sqrt2 * phase * pair.weight_a;
    const std::complex<double> wb = inv_sqrt2 * pair.weight_b;

    double i_c = 0.0;
    double i_d = 0.0;
    std::complex<double> overlap(0.0, 0.0);
    for (std::size_t n = 0; n < pair.branch_a.amps.size(); ++n) {
        const std::complex<double> a = pair.branch_a.amps[n];
        const std::complex<double> b = pair.branch_b.amps[n];
        i_c += std::norm(wb * b + i_unit * wa * a);
        i_d += std::norm(i_unit * wb * b + wa * a);
        overlap += std::conj(b) * a;
    }
    const double total = i_c + i_d;
    if (std::abs(total - 1.0) > evolution_tol) {
        std::ostringstream msg;
        msg << "port probabilities sum to " << total
            << "; truncation has eaten the state";
        throw truncation_error(msg.str(), total);
    }

    const std::complex<double> coherence =
        std::conj(pair.weight_b) * pair.weight_a * phase * overlap;
    const double trace_aa =
        std::norm(pair.weight_a) * pair.branch_a.norm_sq();
    return DetectionRecord{
        pair.theta,
        std::clamp(i_c, 0.0, 1.0),
        std::clamp(i_d, 0.0, 1.0),
        coherence,
        {0.5 * coherence.real(), 0.5 - trace_aa},
    };
}

double ComparisonReport::max_deviation() const noexcept {
    return std::max({max_dev_i_c, max_dev_i_d, max_dev_coherence,
                     max_dev_cross});
}

ComparisonReport compare_with_analytic(double kappa,
                                       std::span<const double> theta_grid,
                                       double chi, const OracleConfig& cfg) {
    require_finite(kappa, "kappa");
    if (kappa < 0.0) {
        throw std::domain_error("kappa must be >= 0");
    }
    require_finite(chi, "chi");
    cfg.validate();
    if (theta_grid.empty()) {
        throw std::invalid_argument("theta_grid must be non-empty");
    }
    for (std::size_t i = 0; i < theta_grid.size(); ++i) {
        if (!std::isfinite(theta_grid[i])) {
            throw std::invalid_argument("theta_grid entry " +
                                        std::to_string(i) + " is not finite");
        }
        if (i > 0 && !(theta_grid[i - 1] < theta_grid[i])) {
            throw std::invalid_argument(
                "theta_grid must be strictly increasing (entry " +
                std::to_string(i) + ")");
        }
    }

    ComparisonReport report;
    report.rows.reserve(theta_grid.size());
    for (double theta : theta_grid) {
        const BranchPair pair = evolve_branches(kappa, theta, cfg);
        const DetectionRecord oracle = beamsplitter_output(pair, chi);
        const DetectionRecord exact = evaluate_point(kappa, theta, chi);

        ComparisonRow row;
        row.theta = theta;
        row.dev_i_c = std::abs(oracle.i_c - exact.i_c);
        row.dev_i_d = std::abs(oracle.i_d - exact.i_d);
        row.dev_coherence = std::abs(oracle.coherence_ab - exact.coherence_ab);
        row.dev_cross = std::abs(oracle.cross_cd - exact.cross_cd);
        report.rows.push_back(row);

        report.max_dev_i_c = std::max(report.max_dev_i_c, row.dev_i_c);
        report.max_dev_i_d = std::max(report.max_dev_i_d, row.dev_i_d);
        report.max_dev_coherence =
            std::max(report.max_dev_coherence, row.dev_coherence);
        report.max_dev_cross = std::max(report.max_dev_cross, row.dev_cross);
    }
    return report;
}

} // namespace catmew
