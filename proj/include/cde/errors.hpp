#pragma once

#include <stdexcept>
#include <string>

namespace cde {

/// Coefficient field too small for the requested operation (schemes need q >= k,
/// avoiding-vector selection needs q >= #obstacles + 1).
class FieldSizeError : public std::runtime_error {
public:
    explicit FieldSizeError(const std::string& what) : std::runtime_error(what) {}
};

/// No vector can satisfy the avoidance constraints (an obstacle contains the source).
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// Linear system has rank < n; packets cannot be recovered.
class UnderdeterminedError : public std::runtime_error {
public:
    explicit UnderdeterminedError(const std::string& what) : std::runtime_error(what) {}
};

/// Linear system is self-contradictory; indicates corrupted payloads or a scheme bug.
class InconsistentSystemError : public std::runtime_error {
public:
    explicit InconsistentSystemError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested computation exceeds a configured enumeration cap.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input document.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cde
