// Error types shared across the library. The CLI maps each type to a
// distinct process exit status (see README).

#pragma once

#include <stdexcept>
#include <string>

namespace patrate {

// Model file could not be read or does not describe a representation.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// File system failure (missing file, unwritable output path).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// The model fails a validation hypothesis (e.g. A+B not primitive) and the
// requested operation refuses to run on it.
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative scheme did not reach its tolerance within its iteration cap.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// A request lies outside the mathematical domain of the operation
// (x outside (U,V), |t| beyond the configured tilt bound, ...).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace patrate
