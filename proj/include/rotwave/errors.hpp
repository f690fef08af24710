#pragma once

#include <stdexcept>
#include <string>

namespace rotwave {

/// Numerical failure (non-finite intermediate, quadrature breakdown, ...).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Linear system could not be solved reliably.
class SingularMatrixError : public NumericError {
public:
    SingularMatrixError(const std::string& what, double rcond)
        : NumericError(what + " (rcond estimate " + std::to_string(rcond) + ")"),
          rcond_(rcond) {}
    double rcond() const { return rcond_; }

private:
    double rcond_;
};

/// No sign change of the dispersion mismatch up to the scan cap.
class NoBifurcationError : public NumericError {
public:
    explicit NoBifurcationError(const std::string& what) : NumericError(what) {}
};

/// Discrete h_p <= 0 somewhere it must be positive.
class StagnationError : public NumericError {
public:
    explicit StagnationError(const std::string& what) : NumericError(what) {}
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Unreadable or corrupt data file (snapshots etc).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rotwave
