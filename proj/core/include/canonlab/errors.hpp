#pragma once

#include <stdexcept>
#include <string>

namespace canonlab {

/// Runtime numerical failure: divergence, SVD breakdown, singular systems.
/// Precondition violations throw std::invalid_argument instead.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace canonlab
