#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace darboux {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define DARBOUX_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                      \
    public:                                                          \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    };

DARBOUX_DEFINE_ERROR(DomainError)
DARBOUX_DEFINE_ERROR(UnboundVariable)
DARBOUX_DEFINE_ERROR(NonRegularCurve)
DARBOUX_DEFINE_ERROR(OutOfRange)
DARBOUX_DEFINE_ERROR(OutOfDomain)
DARBOUX_DEFINE_ERROR(DegenerateParameterization)
DARBOUX_DEFINE_ERROR(VanishingCurvature)
DARBOUX_DEFINE_ERROR(NonRegularSmarandache)
DARBOUX_DEFINE_ERROR(DegenerateNormalizer)
DARBOUX_DEFINE_ERROR(ClassificationMismatch)

#undef DARBOUX_DEFINE_ERROR

class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& message)
        : Error("ParseError at " + std::to_string(position) + ": " + message),
          position_(position), message_(message) {}

    std::size_t position() const noexcept { return position_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t position_;
    std::string message_;
};

/// Raised while validating a run configuration; `field` is a dotted path
/// such as "curve.u".
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& message)
        : Error("ConfigError [" + field + "]: " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace darboux
