#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace sosfit {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid argument value (nonpositive parameter, probability outside (0,1), ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// Rejected input data. `index` is 1-based into the original sequence
/// (0 when the failure is not tied to a single entry).
class InvalidSample : public Error {
public:
    InvalidSample(const std::string& what, std::size_t index = 0)
        : Error(what), index_(index) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_{0};
};

/// The requested fit has no solution (e.g. a shape equation with r = 1).
class Unidentifiable : public Error {
public:
    explicit Unidentifiable(const std::string& what) : Error(what) {}
};

/// Observed information matrix is numerically singular; carries the offending
/// entries in row-major (beta, sigma, a) order.
class SingularInformation : public Error {
public:
    SingularInformation(const std::string& what, std::array<double, 9> entries)
        : Error(what), entries_(entries) {}
    const std::array<double, 9>& entries() const { return entries_; }

private:
    std::array<double, 9> entries_{};
};

/// Negative variance estimate on the inverse-information diagonal.
class NotPositiveDefinite : public Error {
public:
    explicit NotPositiveDefinite(const std::string& what) : Error(what) {}
};

/// Malformed dataset or study configuration. `line` is 1-based (0 if n/a).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_{0};
};

}  // namespace sosfit
