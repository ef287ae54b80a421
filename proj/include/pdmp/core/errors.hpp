#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdmp {

// Input outside the mathematical domain of an operation (non-finite angle,
// violated symmetry precondition, rho <= 2 for r(rho), ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A numerical procedure failed (non-finite integrand, bracket failure,
// integrator self-check).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Non-finite quadrature sample; carries the offending node.
class QuadratureError : public NumericError {
public:
    QuadratureError(const std::string& what, std::size_t node)
        : NumericError(what), node_(node) {}
    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

// Invalid model / simulation / experiment configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thinning proposal count exceeded the runaway guard.
class RunawayError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Reading or writing an artifact file failed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pdmp
