#pragma once

#include <stdexcept>
#include <string>

namespace cavent {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a physical formula (negative temperature,
/// non-positive frequency, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Configuration could not be parsed or contains unknown keys.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace cavent
