// errors.hpp - exception hierarchy; each type maps onto one CLI exit code
#pragma once

#include <stdexcept>
#include <string>

namespace pathsum {

/// Malformed input: config errors, dimension mismatches, invariant violations.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Closed-form evaluation hit coincident energies; caller must reroute to the
/// confluent evaluator.
class degenerate_energies_error : public std::runtime_error {
public:
    explicit degenerate_energies_error(const std::string& what) : std::runtime_error(what) {}
};

/// A-priori resource estimate exceeded the configured budget.
class budget_exceeded_error : public std::runtime_error {
public:
    explicit budget_exceeded_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pathsum
