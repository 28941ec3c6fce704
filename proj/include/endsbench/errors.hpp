#pragma once

#include <stdexcept>
#include <string>

namespace endsbench {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpecError : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NotASubspace : Error { using Error::Error; };
struct ImagesInconsistent : Error { using Error::Error; };
struct PreconditionFailed : Error { using Error::Error; };
struct NotFoundWithinBound : Error { using Error::Error; };
struct NonIntegral : Error { using Error::Error; };
struct WellDefinednessViolation : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };

/// Structural problem in an input object. `pointer` is a JSON pointer into
/// the offending document when the error came from a parsed file.
struct InputError : Error {
    std::string pointer;
    InputError(std::string ptr, const std::string& msg)
        : Error(ptr.empty() ? msg : ptr + ": " + msg), pointer(std::move(ptr)) {}
};

inline void ensure(bool cond, const char* what)
{
    if (!cond) throw Error(what);
}

} // namespace endsbench
