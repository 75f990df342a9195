#pragma once

#include <stdexcept>
#include <string>

namespace parcelize {

// Invalid parameters or incomplete configuration. CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Unreadable, unwritable or malformed files. CLI exit code 3.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// A metric whose denominator is empty (no predictions / empty reference). CLI exit code 4.
struct MetricError : std::runtime_error {
    explicit MetricError(const std::string& msg) : std::runtime_error(msg) {}
};

// Geometrically degenerate input or output.
struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace parcelize
