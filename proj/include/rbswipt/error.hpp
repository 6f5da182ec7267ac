#pragma once

#include <stdexcept>
#include <string>

namespace rbswipt {

// Base for everything the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad user input: malformed config, unknown key, unit mismatch, bad sweep spec.
class ConfigError : public Error {
public:
    using Error::Error;
};

// A physical precondition failed (unstable cavity, non-physical mode, ...).
class PhysicsError : public Error {
public:
    using Error::Error;
};

// An iterative solver did not converge or hit an inconsistent state.
class SolverError : public Error {
public:
    SolverError(const std::string& what, double last_iterate = 0.0)
        : Error(what), last_iterate_(last_iterate) {}

    double last_iterate() const noexcept { return last_iterate_; }

private:
    double last_iterate_;
};

}  // namespace rbswipt
