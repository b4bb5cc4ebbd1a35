#include "catmew/phase_profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace catmew {

PhaseProfile PhaseProfile::constant(double chi) {
    if (!std::isfinite(chi)) {
        throw std::invalid_argument("constant chi must be finite");
    }
    PhaseProfile p;
    p.constant_chi_ = chi;
    return p;
}

PhaseProfile PhaseProfile::sampled(std::vector<ProfileNode> nodes) {
    if (nodes.size() < 2) {
        throw std::invalid_argument(
            "sampled profile needs at least two nodes");
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!std::isfinite(nodes[i].theta) || !std::isfinite(nodes[i].chi)) {
            throw std::invalid_argument("profile node " + std::to_string(i) +
                                        " is not finite");
        }
        if (i > 0 && !(nodes[i - 1].theta < nodes[i].theta)) {
            throw std::invalid_argument(
                "profile node thetas must be strictly increasing (node " +
                std::to_string(i) + ")");
        }
    }
    PhaseProfile p;
    p.nodes_ = std::move(nodes);
    return p;
}

double PhaseProfile::at(double theta) const {
    if (nodes_.empty()) {
        return constant_chi_;
    }
    if (theta <= nodes_.front().theta) {
        return nodes_.front().chi;
    }
    if (theta >= nodes_.back().theta) {
        return nodes_.back().chi;
    }
    const auto upper = std::upper_bound(
        nodes_.begin(), nodes_.end(), theta,
        [](double value, const ProfileNode& node) { return value < node.theta; });
    const auto lower = upper - 1;
    const double span = upper->theta - lower->theta;
    const double frac = (theta - lower->theta) / span;
    return lower->chi + frac * (upper->chi - lower->chi);
}

} // namespace catmew
