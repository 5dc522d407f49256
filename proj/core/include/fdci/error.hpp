#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fdci {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// A zero (or numerically zero) pivot was met during elimination.
class SingularMatrixError : public Error {
public:
    SingularMatrixError(std::size_t pivot, const std::string& what)
        : Error(what), pivot_(pivot) {}
    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

class NotPositiveDefiniteError : public Error {
public:
    NotPositiveDefiniteError(std::size_t index, const std::string& what)
        : Error(what), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace fdci
