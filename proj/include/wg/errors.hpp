// errors.hpp: exception types shared by the wg library and the wgsim tool

#pragma once

#include <stdexcept>
#include <string>

namespace wg {

/// Requested photon number does not fit into the truncated Fock space.
class CapacityError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Matrix fails the density-matrix checks (Hermitian, unit trace, PSD).
class ValidityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Eigensolver failure, unphysical covariance matrix, integration blow-up.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed user input (state descriptors, CLI configuration, mismatched grids).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Truncated propagator sums lost more probability than allowed.
class TruncationError : public NumericalError {
public:
    TruncationError(const std::string& what, double tail)
        : NumericalError(what + " (tail estimate " + std::to_string(tail) + ")"), tail_(tail) {}
    double tail_estimate() const noexcept { return tail_; }

private:
    double tail_;
};

} // namespace wg
