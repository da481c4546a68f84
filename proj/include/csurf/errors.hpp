#pragma once

#include <stdexcept>
#include <string>

namespace csurf {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Inversion of a non-unit in a local ring; carries the valuation seen.
class NotAUnitError : public Error {
public:
    NotAUnitError(const std::string& what, long valuation)
        : Error(what), valuation(valuation) {}
    long valuation;
};

/// An operation would drop a tracked p-adic precision below 1.
class PrecisionExhausted : public Error {
public:
    using Error::Error;
};

/// Input fails a documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An exhaustive enumeration would exceed its documented cap.
class EnumerationTooLarge : public Error {
public:
    using Error::Error;
};

}  // namespace csurf
