#pragma once

#include <stdexcept>
#include <string>

namespace alphaflow {

inline constexpr const char* kVersion = "0.1.0";

// Invalid configuration, bad input files, violated preconditions. CLI exit code 2.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure at runtime (blow-up, non-convergence). CLI exit code 1.
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Trajectory breakdown with the time it was detected.
class BlowUpError : public NumericalError {
  public:
    BlowUpError(double t, const std::string& what) : NumericalError(what), time(t) {}
    double time;
};

}  // namespace alphaflow
