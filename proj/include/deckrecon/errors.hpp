#pragma once

#include <stdexcept>
#include <string>

namespace deckrecon {

// Bad caller input: malformed files, invalid vertex ids, unsatisfiable specs.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The deck parameters fall outside the range where the requested quantity
// can be produced (degenerate denominator, no qualifying bucket, no zero
// window, precondition on n/k violated).
struct RegimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonical forms and brute-force oracles are capped at small orders.
struct UnsupportedSizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace deckrecon
