#include "catmew/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace catmew {

namespace {

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw std::domain_error(std::string(name) + " must be finite");
    }
}

double half_alpha_sq(double kappa, double theta) {
    return kappa * kappa * (1.0 - std::cos(theta));
}

} // namespace

double kerr_phase(double kappa, double theta) {
    require_finite(kappa, "kappa");
    require_finite(theta, "theta");
    return kappa * kappa * (theta - std::sin(theta));
}

std::complex<double> mirror_amplitude(double kappa, double theta) {
    require_finite(kappa, "kappa");
    require_finite(theta, "theta");
    return kappa * (1.0 - std::polar(1.0, -theta));
}

double visibility_envelope(double kappa, double theta) {
    require_finite(kappa, "kappa");
    require_finite(theta, "theta");
    return std::exp(-half_alpha_sq(kappa, theta));
}

Coherence coherence_ab(double kappa, double theta) {
    require_finite(kappa, "kappa");
    require_finite(theta, "theta");
    const double magnitude = 0.5 * std::exp(-half_alpha_sq(kappa, theta));
    return Coherence{std::polar(magnitude, kerr_phase(kappa, theta))};
}

PortIntensities output_intensities(double kappa, double theta, double chi) {
    require_finite(kappa, "kappa");
    require_finite(theta, "theta");
    require_finite(chi, "chi");
    const double envelope = visibility_envelope(kappa, theta);
    const double fringe = envelope * std::sin(kerr_phase(kappa, theta) + chi);
    return PortIntensities{0.5 * (1.0 - fringe), 0.5 * (1.0 + fringe)};
}

std::complex<double> cross_correlation(double kappa, double theta, double chi) {
    require_finite(chi, "chi");
    const std::complex<double> rotated =
        std::polar(1.0, chi) * coherence_ab(kappa, theta).value;
    return {0.5 * rotated.real(), 0.0};
}

DetectionRecord evaluate_point(double kappa, double theta, double chi) {
    const PortIntensities ports = output_intensities(kappa, theta, chi);
    const std::complex<double> rotated =
        std::polar(1.0, chi) * coherence_ab(kappa, theta).value;
    return DetectionRecord{
        theta,
        std::clamp(ports.i_c, 0.0, 1.0),
        std::clamp(ports.i_d, 0.0, 1.0),
        rotated,
        {0.5 * rotated.real(), 0.0},
    };
}

std::vector<DetectionRecord> time_series(double kappa,
                                         std::span<const double> theta_grid,
                                         const PhaseProfile& profile) {
    require_finite(kappa, "kappa");
    if (theta_grid.empty()) {
        throw std::invalid_argument("theta_grid must be non-empty");
    }
    for (std::size_t i = 0; i < theta_grid.size(); ++i) {
        if (!std::isfinite(theta_grid[i])) {
            throw std::invalid_argument("theta_grid entry " + std::to_string(i) +
                                        " is not finite");
        }
        if (i > 0 && !(theta_grid[i - 1] < theta_grid[i])) {
            throw std::invalid_argument(
                "theta_grid must be strictly increasing (entry " +
                std::to_string(i) + ")");
        }
    }
    std::vector<DetectionRecord> records;
    records.reserve(theta_grid.size());
    for (double theta : theta_grid) {
        records.push_back(evaluate_point(kappa, theta, profile.at(theta)));
    }
    return records;
}

} // namespace catmew
