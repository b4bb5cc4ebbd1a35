#pragma once

#include <optional>
#include <string>

namespace catmew {

/// Reduced Planck constant, J*s (2018 CODATA).
inline constexpr double hbar_joule_seconds = 1.054571817e-34;

/// Hardware parameters of the interferometer arm carrying the vibrating
/// mirror. All SI quantities live here; everything downstream is
/// dimensionless.
struct PhysicalParams {
    double mass_kg;          ///< effective mirror mass M
    double omega_m;          ///< mechanical angular frequency, rad/s
    double omega_c;          ///< optical angular frequency, rad/s
    double cavity_length_m;  ///< Fabry-Perot cavity length L

    /// Throws std::domain_error naming the offending field.
    void validate() const;

    /// Non-fatal sanity notes (currently: omega_c should exceed omega_m).
    std::optional<std::string> sanity_warning() const;
};

/// Dimensionless model inputs: coupling kappa, mechanical phase
/// theta = omega_m * t, and the instantaneous phase-shifter value chi.
/// Negative theta is valid and reads as time reversal.
struct ModelState {
    double kappa = 0.0;
    double theta = 0.0;
    double chi = 0.0;

    void validate() const;
};

/// kappa = (omega_c/omega_m) * sqrt(hbar / (2 M omega_m)) / L.
double coupling_constant(const PhysicalParams& p);

/// theta = omega_m * t. Unit bridge; requires omega_m > 0 and finite t.
double dimensionless_time(double omega_m, double t_seconds);

} // namespace catmew
