#ifndef CELLALLOC_ERRORS_HPP
#define CELLALLOC_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace cellalloc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numeric argument outside the defined domain (negative rate, non-positive price).
class DomainError : public Error {
public:
    using Error::Error;
};

// Structurally invalid utility parameters (non-positive a, b, k, r_max).
class ParameterError : public Error {
public:
    using Error::Error;
};

// A message or aggregate violates the bidding protocol's invariants.
class ProtocolError : public Error {
public:
    using Error::Error;
};

// A solver reached a state the algebra rules out; indicates a bug, not bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

// Scenario document fails schema or consistency checks.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Some direction has no users in any cell, so its price is undefined.
class EmptyDirection : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// The bidding loop exhausted its round budget. Carries the per-round
// direction-bid trace so the failure mode can be inspected.
class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, double total_rate, int rounds,
                   std::vector<std::vector<double>> bid_history)
        : Error(what),
          total_rate(total_rate),
          rounds(rounds),
          bid_history(std::move(bid_history)) {}

    double total_rate;
    int rounds;
    std::vector<std::vector<double>> bid_history;
};

} // namespace cellalloc

#endif
