#pragma once

#include <stdexcept>
#include <string>

namespace catmew {

/// Raised when a truncated Fock space cannot hold the requested state to
/// tolerance. Carries the norm-squared actually captured by the truncation.
class truncation_error : public std::runtime_error {
public:
    truncation_error(const std::string& what, double achieved_norm_sq)
        : std::runtime_error(what), norm_sq_(achieved_norm_sq) {}

    double achieved_norm_sq() const noexcept { return norm_sq_; }

private:
    double norm_sq_;
};

} // namespace catmew
