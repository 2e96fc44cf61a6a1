#pragma once

#include <stdexcept>
#include <string>

namespace epade {

// Caller violated a documented precondition (bad m, l, threshold, ...).
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A mathematically guaranteed inequality failed.  This never fires on a
// correct build; if it does, it points at an arithmetic bug.
struct GuaranteeError : std::logic_error {
    using std::logic_error::logic_error;
};

// Work exceeded a configured size or iteration cap.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The precision cap was reached with an indeterminate comparison; the
// result is reported as unknown rather than guessed.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace epade
