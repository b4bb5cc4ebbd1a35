#pragma once

#include <complex>
#include <span>
#include <vector>

#include "catmew/phase_profile.hpp"

namespace catmew {

/// Off-diagonal photon-path coherence, traced over the mirror.
/// Magnitude never exceeds 1/2.
struct Coherence {
    std::complex<double> value;
};

/// Port intensities as single-photon detection probabilities.
struct PortIntensities {
    double i_c;
    double i_d;
};

/// Observables at one time point. coherence_ab and cross_cd carry the
/// readout-phase rotation so that analytic and state-vector producers agree
/// field by field.
struct DetectionRecord {
    double theta;
    double i_c;
    double i_d;
    std::complex<double> coherence_ab;
    std::complex<double> cross_cd;
};

/// Self-phase accumulated by the coupled arm: kappa^2 * (theta - sin theta).
double kerr_phase(double kappa, double theta);

/// Mirror displacement amplitude: kappa * (1 - exp(-i theta)).
std::complex<double> mirror_amplitude(double kappa, double theta);

/// Interference contrast factor exp(-kappa^2 (1 - cos theta)), in (0, 1].
double visibility_envelope(double kappa, double theta);

/// Path coherence (1/2) exp(i phi - |alpha|^2 / 2).
Coherence coherence_ab(double kappa, double theta);

/// Intensities at the two output ports; i_c + i_d = 1 in exact arithmetic.
PortIntensities output_intensities(double kappa, double theta, double chi);

/// Detector cross-correlation: (1/2) Re(e^{i chi} coherence) + i (1/2 - rho_aa)
/// with rho_aa pinned to 1/2 in the decoherence-free model.
std::complex<double> cross_correlation(double kappa, double theta, double chi);

/// All observables at one point; intensities clamped into [0, 1].
DetectionRecord evaluate_point(double kappa, double theta, double chi);

/// One record per grid point, chi sampled from the profile. The grid must be
/// non-empty and strictly increasing.
std::vector<DetectionRecord> time_series(double kappa,
                                         std::span<const double> theta_grid,
                                         const PhaseProfile& profile);

} // namespace catmew
