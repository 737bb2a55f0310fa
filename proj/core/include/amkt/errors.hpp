#pragma once

#include <stdexcept>
#include <string>

namespace amkt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument fell outside the domain an operation accepts.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Quantile requested at a probability whose preimage is an unbounded
/// support endpoint.
class UnboundedQuantile : public Error {
public:
    using Error::Error;
};

/// A roster-consuming operation received no publishers.
class EmptyRoster : public Error {
public:
    using Error::Error;
};

/// Collapse analysis: the market is already unprofitable with zero AI traffic.
class NotViableAtZero : public Error {
public:
    using Error::Error;
};

/// Collapse analysis: tolling revenue alone keeps the market profitable at
/// a = 1, so no collapse threshold exists in (0,1).
class NoCollapse : public Error {
public:
    using Error::Error;
};

/// Comparative statics: the implicit-function denominator is numerically zero.
class DegenerateSlope : public Error {
public:
    using Error::Error;
};

/// Scenario file is not valid JSON.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Scenario JSON is structurally wrong (missing or mistyped field).
class SchemaError : public Error {
public:
    SchemaError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Scenario JSON is well formed but breaks a model invariant.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Reading or writing a file failed.
class IoError : public Error {
public:
    using Error::Error;
};

/// A report contained a non-finite number; emission refuses to proceed.
class NonFiniteOutput : public Error {
public:
    using Error::Error;
};

} // namespace amkt
