#pragma once

#include <stdexcept>
#include <string>

namespace disclab {

/// Base class for every domain error raised by the library. The CLI maps
/// these to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Raised by discrepancy evaluations on a point set with N = 0.
class EmptyPointSet : public Error {
public:
    EmptyPointSet() : Error("point set is empty (N = 0)") {}
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed or out-of-range point file content. `row()` is 1-based and
/// counts physical lines, including the optional header.
class ParseError : public Error {
public:
    ParseError(std::size_t row, const std::string& what)
        : Error("row " + std::to_string(row) + ": " + what), row_(row) {}

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

} // namespace disclab
