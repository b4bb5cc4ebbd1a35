#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "catmew/fock_oracle.hpp"
#include "catmew/params.hpp"
#include "catmew/phase_profile.hpp"

namespace catmew::cli {

enum class RunMode {
    simulate,
    scan_chi,
    revival,
    estimate_kappa,
    oracle_compare,
};

std::string_view mode_name(RunMode mode);

/// Config rejection; line() is 1-based, 0 when no single line applies.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, long line)
        : std::runtime_error(what), line_(line) {}
    long line() const noexcept { return line_; }

private:
    long line_;
};

/// Fully resolved run request. kappa is always usable; physical holds the
/// hardware block when kappa was derived from one.
struct RunConfig {
    RunMode mode = RunMode::simulate;
    double kappa = 0.0;
    std::optional<PhysicalParams> physical;

    double theta_start = 0.0;
    double theta_end = 0.0;
    long points = 1;
    PhaseProfile chi = PhaseProfile::constant(0.0);
    double chi_value = 0.0;

    double theta = 0.0;
    double grid_step = 1e-3;
    int branch_hint = 0;

    int n_max = 3;

    OracleConfig oracle{};
    double tolerance = 1e-6;

    std::string output_path;
};

/// Parses flat key=value text ('#' comments, one pair per line). Unknown and
/// duplicate keys are errors; keys ending in _deg take degrees. Throws
/// ParseError.
RunConfig parse_config(std::string_view text);

} // namespace catmew::cli
