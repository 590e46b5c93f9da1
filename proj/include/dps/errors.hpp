#pragma once

#include <stdexcept>
#include <string>

namespace dps {

// Input outside the mathematical domain of an operation (angle out of
// range, |c| > 2, all-zero weights, undefined phase).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller broke an operation's contract (size mismatch, empty grid, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Invalid model parameter such as gamma <= 0.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation declines a request that is valid but too expensive to serve.
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical breakdown, e.g. a failed Cholesky pivot.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dps
