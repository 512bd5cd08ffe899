#pragma once

#include <stdexcept>
#include <string>

namespace lgsim {

/// An argument lies outside the mathematical domain of an operation
/// (non-positive temperature, venality outside [0, 1], ...).
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// A caller-supplied object violates a documented precondition
/// (non-unit trace, non-Hermitian matrix, mismatched inputs).
class ContractError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Inputs were individually valid but leave nothing to compute on
/// (zero post-selected weight, every Monte Carlo sample discarded).
class DegenerateError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Configuration file or flag problem. `field()` names the offending key.
class ConfigError : public std::invalid_argument {
   public:
    ConfigError(std::string field, const std::string &message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

    const std::string &field() const noexcept { return field_; }

   private:
    std::string field_;
};

class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace lgsim
