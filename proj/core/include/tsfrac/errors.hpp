#pragma once

#include <stdexcept>
#include <string>

namespace tsfrac {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OverlapError : public Error {
public:
    using Error::Error;
};

class DegenerateScaleError : public Error {
public:
    using Error::Error;
};

class NotInScaleError : public Error {
public:
    explicit NotInScaleError(double t);
};

class NotANodeError : public Error {
public:
    explicit NotANodeError(double t);
};

class ResolutionError : public Error {
public:
    using Error::Error;
};

class BadExponentError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// Raised by the literal (LeftEndpoint) kernel when (t - sigma(s))^(alpha-1)
/// is evaluated at a zero base with alpha < 1.
class SingularKernelError : public Error {
public:
    SingularKernelError(std::size_t cell, std::size_t node, double alpha);

    std::size_t cell() const noexcept { return cell_; }
    std::size_t node() const noexcept { return node_; }

private:
    std::size_t cell_;
    std::size_t node_;
};

class LineSearchFailure : public Error {
public:
    using Error::Error;
};

class EndpointNotFound : public Error {
public:
    using Error::Error;
};

/// Configuration errors; `field` names the offending key (dotted path).
class SchemaError : public Error {
public:
    SchemaError(std::string field, const std::string& message);

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

} // namespace tsfrac
