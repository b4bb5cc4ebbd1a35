#include "runner.hpp"

#include "catmew/analytic.hpp"
#include "catmew/errors.hpp"
#include "catmew/fock_oracle.hpp"
#include "catmew/tuning.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace catmew::cli {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

/// Locale-free, 17 significant digits: parses back to the identical double.
std::string fmt(double value) {
    char buf[64];
    const auto [end, ec] = std::to_chars(
        buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, end);
}

std::string fmt(long value) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, end);
}

std::string_view propagator_name(Propagator p) {
    return p == Propagator::eigendecomposition ? "eigendecomposition"
                                               : "fixed-step-4th-order";
}

std::vector<double> make_grid(double start, double end, long points) {
    std::vector<double> grid(static_cast<std::size_t>(points));
    if (points == 1) {
        grid[0] = start;
        return grid;
    }
    const double span = end - start;
    const double denom = static_cast<double>(points - 1);
    for (long i = 0; i < points; ++i) {
        grid[static_cast<std::size_t>(i)] =
            start + span * (static_cast<double>(i) / denom);
    }
    return grid;
}

void write_common_header(std::ostream& out, const RunConfig& cfg) {
    out << "# catmew output\n";
    out << "# mode=" << mode_name(cfg.mode) << "\n";
    if (cfg.physical) {
        out << "# mass_kg=" << fmt(cfg.physical->mass_kg) << "\n";
        out << "# omega_m=" << fmt(cfg.physical->omega_m) << "\n";
        out << "# omega_c=" << fmt(cfg.physical->omega_c) << "\n";
        out << "# cavity_length_m=" << fmt(cfg.physical->cavity_length_m)
            << "\n";
    }
    out << "# kappa=" << fmt(cfg.kappa) << "\n";
}

void write_grid_header(std::ostream& out, const RunConfig& cfg) {
    out << "# theta_start=" << fmt(cfg.theta_start) << "\n";
    out << "# theta_end=" << fmt(cfg.theta_end) << "\n";
    out << "# points=" << fmt(cfg.points) << "\n";
}

void write_profile_header(std::ostream& out, const PhaseProfile& profile) {
    if (profile.is_constant()) {
        out << "# chi=" << fmt(profile.constant_value()) << "\n";
        return;
    }
    out << "# chi_profile=";
    bool first = true;
    for (const ProfileNode& node : profile.nodes()) {
        if (!first) {
            out << ",";
        }
        out << fmt(node.theta) << ":" << fmt(node.chi);
        first = false;
    }
    out << "\n";
}

int run_simulate(const RunConfig& cfg, std::ostream& out) {
    const std::vector<double> grid =
        make_grid(cfg.theta_start, cfg.theta_end, cfg.points);
    const std::vector<DetectionRecord> records =
        time_series(cfg.kappa, grid, cfg.chi);

    write_common_header(out, cfg);
    write_grid_header(out, cfg);
    write_profile_header(out, cfg.chi);
    out << "# columns: theta,chi,i_c,i_d,re_coh,im_coh,re_cross,im_cross,"
           "envelope\n";
    for (const DetectionRecord& r : records) {
        out << fmt(r.theta) << "," << fmt(cfg.chi.at(r.theta)) << ","
            << fmt(r.i_c) << "," << fmt(r.i_d) << ","
            << fmt(r.coherence_ab.real()) << "," << fmt(r.coherence_ab.imag())
            << "," << fmt(r.cross_cd.real()) << "," << fmt(r.cross_cd.imag())
            << "," << fmt(visibility_envelope(cfg.kappa, r.theta)) << "\n";
    }
    return 0;
}

int run_revival(const RunConfig& cfg, std::ostream& out) {
    write_common_header(out, cfg);
    out << "# n_max=" << fmt(static_cast<long>(cfg.n_max)) << "\n";
    out << "# columns: n,theta_n,chi_paper,chi_exact,i_c_at_exact\n";
    for (int n = 1; n <= cfg.n_max; ++n) {
        const double theta_n = two_pi * n;
        const double chi_exact = revival_phase_exact(n, cfg.kappa);
        out << fmt(static_cast<long>(n)) << "," << fmt(theta_n) << ","
            << fmt(revival_phase_paper(n, cfg.kappa)) << "," << fmt(chi_exact)
            << ","
            << fmt(output_intensities(cfg.kappa, theta_n, chi_exact).i_c)
            << "\n";
    }
    return 0;
}

void write_scan_summary(std::ostream& out, const ScanResult& scan) {
    out << "# chi_star=" << fmt(scan.chi_star) << "\n";
    out << "# contrast_at_star=" << fmt(scan.contrast_at_star) << "\n";
    out << "# kappa_sq_estimate=" << fmt(scan.kappa_sq_estimate) << "\n";
    out << "# estimate_valid=" << (scan.estimate_valid ? "1" : "0") << "\n";
}

int run_scan_chi(const RunConfig& cfg, std::ostream& out) {
    const ScanResult scan = scan_chi(cfg.kappa, cfg.theta, cfg.grid_step);

    write_common_header(out, cfg);
    out << "# theta=" << fmt(cfg.theta) << "\n";
    out << "# grid_step=" << fmt(cfg.grid_step) << "\n";
    out << "# columns: chi,contrast\n";
    for (long k = 0;; ++k) {
        const double chi = static_cast<double>(k) * cfg.grid_step;
        if (chi >= two_pi) {
            break;
        }
        const PortIntensities ports =
            output_intensities(cfg.kappa, cfg.theta, chi);
        out << fmt(chi) << "," << fmt(ports.i_c - ports.i_d) << "\n";
    }
    write_scan_summary(out, scan);
    return 0;
}

int run_estimate_kappa(const RunConfig& cfg, std::ostream& out,
                       std::ostream& log) {
    const ScanResult scan = scan_chi(cfg.kappa, cfg.theta, cfg.grid_step);
    if (!scan.estimate_valid) {
        log << "validation error: theta is not a positive revival time\n";
        return 2;
    }
    const double kappa_hat = estimate_kappa(scan, cfg.branch_hint);

    write_common_header(out, cfg);
    out << "# theta=" << fmt(cfg.theta) << "\n";
    out << "# grid_step=" << fmt(cfg.grid_step) << "\n";
    out << "# branch_hint=" << fmt(static_cast<long>(cfg.branch_hint)) << "\n";
    out << "# columns: kappa_hat,kappa_sq_estimate,chi_star,contrast_at_star,"
           "theta,grid_step,branch_hint\n";
    out << fmt(kappa_hat) << "," << fmt(scan.kappa_sq_estimate) << ","
        << fmt(scan.chi_star) << "," << fmt(scan.contrast_at_star) << ","
        << fmt(cfg.theta) << "," << fmt(cfg.grid_step) << ","
        << fmt(static_cast<long>(cfg.branch_hint)) << "\n";
    return 0;
}

int run_oracle_compare(const RunConfig& cfg, std::ostream& out,
                       std::ostream& log) {
    const std::vector<double> grid =
        make_grid(cfg.theta_start, cfg.theta_end, cfg.points);
    const ComparisonReport report =
        compare_with_analytic(cfg.kappa, grid, cfg.chi_value, cfg.oracle);

    write_common_header(out, cfg);
    write_grid_header(out, cfg);
    out << "# chi=" << fmt(cfg.chi_value) << "\n";
    out << "# oracle_dim=" << fmt(static_cast<long>(cfg.oracle.dim)) << "\n";
    out << "# oracle_propagator=" << propagator_name(cfg.oracle.propagator)
        << "\n";
    out << "# steps_per_period="
        << fmt(static_cast<long>(cfg.oracle.steps_per_period)) << "\n";
    out << "# tolerance=" << fmt(cfg.tolerance) << "\n";
    out << "# columns: theta,dev_i_c,dev_i_d,dev_coherence,dev_cross\n";
    for (const ComparisonRow& row : report.rows) {
        out << fmt(row.theta) << "," << fmt(row.dev_i_c) << ","
            << fmt(row.dev_i_d) << "," << fmt(row.dev_coherence) << ","
            << fmt(row.dev_cross) << "\n";
    }
    out << "# max_dev_i_c=" << fmt(report.max_dev_i_c) << "\n";
    out << "# max_dev_i_d=" << fmt(report.max_dev_i_d) << "\n";
    out << "# max_dev_coherence=" << fmt(report.max_dev_coherence) << "\n";
    out << "# max_dev_cross=" << fmt(report.max_dev_cross) << "\n";
    out << "# max_deviation=" << fmt(report.max_deviation()) << "\n";
    out << "# within_tolerance="
        << (report.max_deviation() <= cfg.tolerance ? "1" : "0") << "\n";

    if (report.max_deviation() > cfg.tolerance) {
        log << "numerical error: max deviation " << fmt(report.max_deviation())
            << " exceeds tolerance " << fmt(cfg.tolerance) << "\n";
        return 3;
    }
    return 0;
}

} // namespace

int run(const RunConfig& cfg, std::ostream& log) {
    if (cfg.output_path.empty()) {
        log << "validation error: output_path is required (set it in the "
               "config or pass --output)\n";
        return 2;
    }
    if (cfg.physical) {
        if (const auto warning = cfg.physical->sanity_warning()) {
            log << "warning: " << *warning << "\n";
        }
    }

    std::ofstream out(cfg.output_path,
                      std::ios::binary | std::ios::trunc);
    if (!out) {
        log << "i/o error: cannot open '" << cfg.output_path
            << "' for writing\n";
        return 4;
    }

    int code = 0;
    try {
        switch (cfg.mode) {
        case RunMode::simulate:
            code = run_simulate(cfg, out);
            break;
        case RunMode::revival:
            code = run_revival(cfg, out);
            break;
        case RunMode::scan_chi:
            code = run_scan_chi(cfg, out);
            break;
        case RunMode::estimate_kappa:
            code = run_estimate_kappa(cfg, out, log);
            break;
        case RunMode::oracle_compare:
            code = run_oracle_compare(cfg, out, log);
            break;
        }
    } catch (const truncation_error& e) {
        log << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        log << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        log << "validation error: " << e.what() << "\n";
        return 2;
    }

    out.flush();
    if (!out) {
        log << "i/o error: write to '" << cfg.output_path << "' failed\n";
        return 4;
    }
    if (code == 0) {
        log << "wrote " << cfg.output_path << "\n";
    }
    return code;
}

} // namespace catmew::cli
