#include "catmew/params.hpp"

#include <cmath>
#include <stdexcept>

namespace catmew {

namespace {

void require_positive_finite(double value, const char* field) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw std::domain_error(std::string(field) +
                                " must be positive and finite");
    }
}

} // namespace

void PhysicalParams::validate() const {
    require_positive_finite(mass_kg, "mass_kg");
    require_positive_finite(omega_m, "omega_m");
    require_positive_finite(omega_c, "omega_c");
    require_positive_finite(cavity_length_m, "cavity_length_m");
}

std::optional<std::string> PhysicalParams::sanity_warning() const {
    if (omega_c <= omega_m) {
        return "omega_c <= omega_m: optical frequency does not exceed the "
               "mechanical frequency";
    }
    return std::nullopt;
}

void ModelState::validate() const {
    if (!std::isfinite(kappa) || kappa < 0.0) {
        throw std::domain_error("kappa must be finite and >= 0");
    }
    if (!std::isfinite(theta)) {
        throw std::domain_error("theta must be finite");
    }
    if (!std::isfinite(chi)) {
        throw std::domain_error("chi must be finite");
    }
}

double coupling_constant(const PhysicalParams& p) {
    p.validate();
    const double zero_point =
        std::sqrt(hbar_joule_seconds / (2.0 * p.mass_kg * p.omega_m));
    return (p.omega_c / p.omega_m) * (zero_point / p.cavity_length_m);
}

double dimensionless_time(double omega_m, double t_seconds) {
    require_positive_finite(omega_m, "omega_m");
    if (!std::isfinite(t_seconds)) {
        throw std::domain_error("t_seconds must be finite");
    }
    return omega_m * t_seconds;
}

} // namespace catmew
