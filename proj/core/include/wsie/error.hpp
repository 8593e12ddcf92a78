#pragma once

#include "wsie/point.hpp"

#include <stdexcept>
#include <string>

namespace wsie {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters: bad kernel spec, out-of-range m, missing epsilon, ...
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A point or argument lies outside the admissible domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed input data, e.g. duplicate collocation nodes.
class DataError : public Error {
public:
    using Error::Error;
};

/// Node generation could not place the requested number of points.
class GenerationError : public Error {
public:
    using Error::Error;
};

/// Base for failures of a numerical procedure.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// An integrand returned a non-finite value at a quadrature node.
class IntegrationError : public NumericalError {
public:
    IntegrationError(const std::string& what, Point node)
        : NumericalError(what), node_(node) {}
    [[nodiscard]] const Point& node() const noexcept { return node_; }

private:
    Point node_;
};

/// A collocation matrix entry could not be computed.
class AssemblyError : public NumericalError {
public:
    AssemblyError(const std::string& what, std::size_t row, std::size_t col)
        : NumericalError(what), row_(row), col_(col) {}
    [[nodiscard]] std::size_t row() const noexcept { return row_; }
    [[nodiscard]] std::size_t col() const noexcept { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

/// LU factorisation hit a (numerically) zero pivot.
class SingularSystemError : public NumericalError {
public:
    SingularSystemError(const std::string& what, double condition_estimate)
        : NumericalError(what), condition_(condition_estimate) {}
    [[nodiscard]] double condition_estimate() const noexcept { return condition_; }

private:
    double condition_;
};

/// The optimiser never observed a finite cost.
class OptimizationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace wsie
