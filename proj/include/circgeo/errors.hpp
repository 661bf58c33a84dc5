#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace circgeo {

// Base of every error raised by the library. Each subclass corresponds to one
// failure kind that callers (notably the CLI) may want to tell apart.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept = 0;
};

#define CIRCGEO_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                     \
    public:                                                         \
        using Error::Error;                                         \
        const char* kind() const noexcept override { return #Name; } \
    }

CIRCGEO_DEFINE_ERROR(SingularMatrix);
CIRCGEO_DEFINE_ERROR(UnknownBuiltin);
CIRCGEO_DEFINE_ERROR(DegenerateMetric);
CIRCGEO_DEFINE_ERROR(ParallelismViolated);
CIRCGEO_DEFINE_ERROR(StencilTooWide);
CIRCGEO_DEFINE_ERROR(DependentOrbit);
CIRCGEO_DEFINE_ERROR(IndefiniteMetric);
CIRCGEO_DEFINE_ERROR(DegenerateSection);
CIRCGEO_DEFINE_ERROR(ConfigError);
CIRCGEO_DEFINE_ERROR(IoError);

#undef CIRCGEO_DEFINE_ERROR

// Malformed field specification; position is a 0-based offset into the text.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message + " at position " + std::to_string(position)),
          position_(position) {}

    const char* kind() const noexcept override { return "ParseError"; }
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace circgeo
