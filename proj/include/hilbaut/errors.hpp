#pragma once

#include <stdexcept>
#include <string>

namespace hilbaut {

// Input outside an operation's domain (zero RHS, negative radicand, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Pell machinery invoked on a square radicand; callers that must stay total
// switch to the divisor-enumeration path instead.
struct PerfectSquareError : std::runtime_error {
    explicit PerfectSquareError(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant failed. Reaching this means either a bug or a
// counterexample to the underlying theory; never swallowed.
struct ContractViolation : std::logic_error {
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace hilbaut
