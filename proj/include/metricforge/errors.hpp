#pragma once

#include <stdexcept>
#include <string>

namespace metricforge {

// Base of every domain error raised by the library. kind() is the stable
// name emitted in JSON error objects by the CLI.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

#define METRICFORGE_DEFINE_ERROR(Name)                                  \
    class Name : public Error {                                         \
      public:                                                           \
        using Error::Error;                                             \
        const char* kind() const noexcept override { return #Name; }    \
    }

// space validation
METRICFORGE_DEFINE_ERROR(ShapeError);
METRICFORGE_DEFINE_ERROR(AsymmetryError);
METRICFORGE_DEFINE_ERROR(ZeroDistanceError);
METRICFORGE_DEFINE_ERROR(NonfiniteEntryError);

// combinators
METRICFORGE_DEFINE_ERROR(LabelCollisionError);
METRICFORGE_DEFINE_ERROR(TooSmallError);
METRICFORGE_DEFINE_ERROR(ConstantTooSmallError);
METRICFORGE_DEFINE_ERROR(NotSortedError);
METRICFORGE_DEFINE_ERROR(DegenerateError);
METRICFORGE_DEFINE_ERROR(InternalSamplingError);

// functions
METRICFORGE_DEFINE_ERROR(UnknownBuiltinError);
METRICFORGE_DEFINE_ERROR(ArityError);
METRICFORGE_DEFINE_ERROR(DomainError);
METRICFORGE_DEFINE_ERROR(UnknownPropertyError);

// preservers
METRICFORGE_DEFINE_ERROR(BlockViolatesSourceError);

// Caller passed arguments outside an operation's documented precondition.
METRICFORGE_DEFINE_ERROR(PreconditionError);

#undef METRICFORGE_DEFINE_ERROR

class ParseError : public Error {
  public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    const char* kind() const noexcept override { return "ParseError"; }
    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

} // namespace metricforge
