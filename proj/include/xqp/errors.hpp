#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xqp {

// Base class for every domain error raised by the library. The CLI maps these
// to exit code 1 and prints kind() as the machine-readable tag.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define XQP_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& what) : Error(#Name, what) {}      \
    };

XQP_DEFINE_ERROR(InvalidArgument)
XQP_DEFINE_ERROR(IndexOutOfRange)
XQP_DEFINE_ERROR(UnsupportedEvent)
XQP_DEFINE_ERROR(OracleTooLarge)
XQP_DEFINE_ERROR(CapExceeded)
XQP_DEFINE_ERROR(SectorTooLarge)
XQP_DEFINE_ERROR(DegenerateAngle)
XQP_DEFINE_ERROR(DegenerateAxialDistance)
XQP_DEFINE_ERROR(DegenerateSpectralParameters)
XQP_DEFINE_ERROR(ParseError)

#undef XQP_DEFINE_ERROR

class PostselectionImpossible : public Error {
public:
    PostselectionImpossible(const std::string& what, std::ptrdiff_t event_index = -1)
        : Error("PostselectionImpossible", what), event_index_(event_index) {}
    // Index of the offending event inside the circuit, or -1 when raised by a
    // standalone postselect() call.
    std::ptrdiff_t event_index() const noexcept { return event_index_; }

private:
    std::ptrdiff_t event_index_;
};

}  // namespace xqp
