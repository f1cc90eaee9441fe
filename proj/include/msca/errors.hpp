#pragma once

#include <stdexcept>
#include <string>

namespace msca {

// Violated precondition or broken internal invariant: a caller bug or an
// implementation bug, never a data-dependent condition.
class ContractViolation : public std::logic_error {
public:
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// Input exceeds a documented size limit (ground set, enumeration budget, ...).
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed user input: unknown flags, bad files, invalid parameter combos.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace msca
