#pragma once

#include <functional>

namespace catmew {

/// Readout phase matching the n-th revival, as the first-revival tuning rule
/// extrapolates it: 2*pi*((2n+1)/4 - kappa^2), reduced into [0, 2*pi).
/// Exact only at n = 1; kept verbatim for comparison.
double revival_phase_paper(int n, double kappa);

/// Readout phase that makes port C fully bright at theta = 2*pi*n for every
/// n: 3*pi/2 - 2*pi*n*kappa^2, reduced into [0, 2*pi).
double revival_phase_exact(int n, double kappa);

/// Outcome of a readout-phase scan. contrast_at_star is i_c - i_d at the
/// refined maximizer. kappa_sq_estimate inverts the first-revival tuning
/// relation and is meaningful only when estimate_valid (theta within 1e-6 of
/// a positive revival time); a single scan identifies kappa^2 modulo 1.
struct ScanResult {
    double chi_star = 0.0;
    double contrast_at_star = 0.0;
    double kappa_sq_estimate = 0.0;
    double grid_step = 0.0;
    bool estimate_valid = false;
};

/// Scans chi over [0, 2*pi) on a uniform grid, refines the best point by one
/// three-point parabolic step, and inverts the tuning relation.
/// grid_step must lie in (0, 0.1].
ScanResult scan_chi(double kappa, double theta, double grid_step);

/// sqrt(kappa_sq_estimate + branch_hint); requires a valid scan estimate and
/// branch_hint >= 0.
double estimate_kappa(const ScanResult& scan, int branch_hint = 0);

namespace detail {

struct GridPeak {
    double chi_star;
    double value_at_star;
};

/// Grid argmax over chi in [0, 2*pi) plus one parabolic refinement. Ties go
/// to the smallest chi; the refinement is kept only when it improves on the
/// grid value. The argmax is invariant under adding a constant to the signal.
GridPeak scan_signal(const std::function<double(double)>& signal,
                     double grid_step);

} // namespace detail

} // namespace catmew
