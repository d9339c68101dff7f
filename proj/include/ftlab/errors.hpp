#pragma once

#include <stdexcept>
#include <string>

namespace ftlab {

// Invalid argument ranges (tau <= 0, p outside (1,2), ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed value objects (inconsistent cell bounds, non-monotone steps, ...).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested combination is deliberately unsupported.
struct FeatureError : std::logic_error {
    using std::logic_error::logic_error;
};

// A certified computation could not resolve below the requested tolerance.
// Carries the width (or bound) that was actually achieved.
struct UnresolvedError : std::runtime_error {
    UnresolvedError(const std::string& what, double achieved_)
        : std::runtime_error(what), achieved(achieved_) {}
    double achieved;
};

} // namespace ftlab
