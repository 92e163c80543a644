#ifndef APTRING_ERRORS_HPP
#define APTRING_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace aptring {

/// Invalid physical/geometry/mode value (non-positive constant, kappa = 0, ...).
class ParamDomainError : public std::invalid_argument {
public:
    explicit ParamDomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed or inconsistent configuration input (files, keys, units, flags).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure at run time: bracket without sign change, time-step
/// instability, unusable fit input, singular evaluation point.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace aptring

#endif
