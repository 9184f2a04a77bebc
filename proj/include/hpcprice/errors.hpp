#pragma once

#include <stdexcept>
#include <string>

namespace hpcprice {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A base or derived parameter violates its documented bound.
/// Carries the offending field name so diagnostics can point at it.
class InvalidParameter : public Error {
public:
    InvalidParameter(std::string field, std::string bound)
        : Error(field + ": " + bound), field_(std::move(field)), bound_(std::move(bound)) {}

    const std::string& field() const noexcept { return field_; }
    const std::string& bound() const noexcept { return bound_; }

private:
    std::string field_;
    std::string bound_;
};

/// Normalization against a break-even baseline (gain == 0) is undefined.
class NormalizationUndefined : public Error {
public:
    explicit NormalizationUndefined(const std::string& what) : Error(what) {}
};

/// Profitability ratio requested with zero income.
class ZeroIncome : public Error {
public:
    ZeroIncome() : Error("profitability undefined: income is zero") {}
};

/// The bracketing order was violated during isosurface bisection; the
/// supplied function is not monotone along the probe axis.
class NonMonotone : public Error {
public:
    explicit NonMonotone(const std::string& what) : Error(what) {}
};

/// An axis or override names a parameter that cannot be swept or set.
class InvalidAxis : public Error {
public:
    explicit InvalidAxis(const std::string& what) : Error(what) {}
};

/// A scenario document failed to parse; message carries the location.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// A parsed scenario violates a model invariant.
class ValidationError : public InvalidParameter {
public:
    ValidationError(std::string field, std::string bound)
        : InvalidParameter(std::move(field), std::move(bound)) {}
};

/// A scenario document contains a key the schema does not define.
class UnknownField : public Error {
public:
    explicit UnknownField(const std::string& key)
        : Error("unknown field: " + key) {}
};

} // namespace hpcprice
