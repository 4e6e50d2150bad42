#pragma once

#include <stdexcept>
#include <string>

namespace framesmith {

/// Malformed textual input (rationals, JSON documents, CLI values).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::string location)
        : std::runtime_error(what + " at '" + location + "'"), location_(std::move(location)) {}
    const std::string& location() const { return location_; }

private:
    std::string location_;
};

/// A value was well formed but violates a named invariant.
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string invariant, const std::string& detail)
        : std::runtime_error(invariant + ": " + detail), invariant_(std::move(invariant)) {}
    const std::string& invariant() const { return invariant_; }

private:
    std::string invariant_;
};

}  // namespace framesmith
