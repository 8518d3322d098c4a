#pragma once

#include <stdexcept>
#include <string>

namespace udefect {

/// Thrown when an input exceeds a configured enumeration or size cap.
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an internal cross-check fails (indicates a bug, not bad input).
class consistency_error : public std::logic_error {
public:
    explicit consistency_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace udefect
