#pragma once

#include <vector>

namespace catmew {

/// One knot of a piecewise-linear readout-phase schedule.
struct ProfileNode {
    double theta;
    double chi;
};

/// Readout phase chi as a function of dimensionless time theta.
///
/// Either a constant, or linear interpolation through strictly increasing
/// nodes with clamping outside the sampled range.
class PhaseProfile {
public:
    static PhaseProfile constant(double chi);
    static PhaseProfile sampled(std::vector<ProfileNode> nodes);

    double at(double theta) const;

    bool is_constant() const noexcept { return nodes_.empty(); }
    double constant_value() const noexcept { return constant_chi_; }
    const std::vector<ProfileNode>& nodes() const noexcept { return nodes_; }

private:
    PhaseProfile() = default;

    double constant_chi_ = 0.0;
    std::vector<ProfileNode> nodes_;
};

} // namespace catmew
