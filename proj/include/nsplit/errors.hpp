#pragma once

#include <stdexcept>
#include <string>

namespace nsplit {

/// Raised when an instance exceeds a configured enumeration/search cap.
struct too_large_error : std::runtime_error {
    explicit too_large_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an operation does not support the given parameter regime.
struct unsupported_error : std::runtime_error {
    explicit unsupported_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nsplit
