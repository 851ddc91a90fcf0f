#pragma once

#include <stdexcept>
#include <string>

namespace afmet {

/// Argument outside a documented domain (coupling, radius, quantum numbers, grid size).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A required inverse does not exist: K or g' is not strictly monotone on the domain.
class MonotonicityError : public std::runtime_error {
public:
    explicit MonotonicityError(const std::string& what) : std::runtime_error(what) {}
};

/// An iteration failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// The energy function has no stationary point on the admissible coupling interval.
class NoExtremumError : public std::runtime_error {
public:
    explicit NoExtremumError(const std::string& what) : std::runtime_error(what) {}
};

/// The discretized eigenproblem is inconsistent (node count, Richardson estimate, confinement).
class OracleError : public std::runtime_error {
public:
    explicit OracleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace afmet
