#include "catmew/tuning.hpp"

#include "catmew/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace catmew {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_two_pi(double x) {
    double wrapped = std::fmod(x, two_pi);
    if (wrapped < 0.0) {
        wrapped += two_pi;
    }
    return wrapped < two_pi ? wrapped : 0.0;
}

double wrap_unit(double x) {
    double wrapped = std::fmod(x, 1.0);
    if (wrapped < 0.0) {
        wrapped += 1.0;
    }
    return wrapped < 1.0 ? wrapped : 0.0;
}

void require_revival_index(int n) {
    if (n < 1) {
        throw std::invalid_argument("revival index n must be >= 1");
    }
}

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw std::domain_error(std::string(name) + " must be finite");
    }
}

} // namespace

double revival_phase_paper(int n, double kappa) {
    require_revival_index(n);
    require_finite(kappa, "kappa");
    return wrap_two_pi(two_pi * ((2.0 * n + 1.0) / 4.0 - kappa * kappa));
}

double revival_phase_exact(int n, double kappa) {
    require_revival_index(n);
    require_finite(kappa, "kappa");
    return wrap_two_pi(1.5 * std::numbers::pi - two_pi * n * kappa * kappa);
}

namespace detail {

GridPeak scan_signal(const std::function<double(double)>& signal,
                     double grid_step) {
    if (!std::isfinite(grid_step) || grid_step <= 0.0 || grid_step > 0.1) {
        throw std::invalid_argument("grid_step must lie in (0, 0.1]");
    }

    const long count =
        static_cast<long>(std::ceil(two_pi / grid_step));
    double best_chi = 0.0;
    double best_value = signal(0.0);
    for (long k = 1; k < count; ++k) {
        const double chi = static_cast<double>(k) * grid_step;
        if (chi >= two_pi) {
            break;
        }
        const double value = signal(chi);
        if (value > best_value) {
            best_value = value;
            best_chi = chi;
        }
    }

    // One parabolic step through the three points around the grid maximizer.
    // The offsets cancel any constant added to the signal, so the refined
    // position depends only on the signal's shape.
    const double f_minus = signal(best_chi - grid_step);
    const double f_plus = signal(best_chi + grid_step);
    const double denom = f_minus + f_plus - 2.0 * best_value;
    if (std::isfinite(denom) && denom < 0.0) {
        const double delta =
            0.5 * grid_step * (f_minus - f_plus) / denom;
        const double refined_chi = wrap_two_pi(best_chi + delta);
        const double refined_value = signal(refined_chi);
        if (refined_value >= best_value) {
            return GridPeak{refined_chi, refined_value};
        }
    }
    return GridPeak{best_chi, best_value};
}

} // namespace detail

ScanResult scan_chi(double kappa, double theta, double grid_step) {
    require_finite(kappa, "kappa");
    require_finite(theta, "theta");

    const auto contrast = [kappa, theta](double chi) {
        const PortIntensities ports = output_intensities(kappa, theta, chi);
        return ports.i_c - ports.i_d;
    };
    const detail::GridPeak peak = detail::scan_signal(contrast, grid_step);

    ScanResult result;
    result.chi_star = peak.chi_star;
    result.contrast_at_star = peak.value_at_star;
    result.grid_step = grid_step;

    const long n = std::lround(theta / two_pi);
    result.estimate_valid =
        n >= 1 && std::abs(theta - static_cast<double>(n) * two_pi) <= 1e-6;

    if (result.estimate_valid) {
        result.kappa_sq_estimate = wrap_unit(
            (2.0 * static_cast<double>(n) + 1.0) / 4.0 -
            result.chi_star / two_pi);
    }
    return result;
}

double estimate_kappa(const ScanResult& scan, int branch_hint) {
    if (!scan.estimate_valid) {
        throw std::invalid_argument(
            "scan estimate is invalid: theta was not a positive revival time");
    }
    if (branch_hint < 0) {
        throw std::invalid_argument("branch_hint must be >= 0");
    }
    return std::sqrt(scan.kappa_sq_estimate +
                     static_cast<double>(branch_hint));
}

} // namespace catmew
