// error.hpp - error codes and the exception type used across the library.
// The codes mirror the status values of the public C API one-to-one.

#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

enum class ErrorCode {
    invalid_argument = 1,
    not_normalized = 2,
    trivial_angle = 3,
    window_mismatch = 4,
    consistency = 5,
    no_convergence = 6,
    no_correspondence = 7,
    io = 8,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace qwalk
