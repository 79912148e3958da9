#pragma once

#include <stdexcept>
#include <string>

namespace sph {

// Base for every failure contract in the library. Callers that want to
// distinguish causes catch the concrete type; everything derives from
// std::runtime_error so tools can report uniformly.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation at a numeric q requires every power of s to be even.
struct OddPowerError : Error {
    using Error::Error;
};

// Exact polynomial division left a remainder.
struct InexactDivisionError : Error {
    using Error::Error;
};

struct RankMismatchError : Error {
    using Error::Error;
};

// An element strayed outside the region a routine requires.
struct RegionViolationError : Error {
    using Error::Error;
};

// An operator with infinitely many shift levels was used without a level bound.
struct TruncationRequiredError : Error {
    using Error::Error;
};

// An adjoint window omitted an index whose contribution is nonzero.
struct WindowTooSmallError : Error {
    using Error::Error;
};

// Modular arithmetic ran out of tracked p-adic digits.
struct PrecisionLossError : Error {
    using Error::Error;
};

// A configured enumeration or memo-table cap was hit.
struct CapExceededError : Error {
    using Error::Error;
};

// A lattice of the requested type cannot exist under the stated parity.
struct NoSuchTypeError : Error {
    using Error::Error;
};

// An integrality guarantee (divisibility of a derived count) failed.
struct NonIntegralError : Error {
    using Error::Error;
};

// Malformed constructor input (bad relation spec, bad window, ...).
struct InvalidSpecError : Error {
    using Error::Error;
};

// Expression / matrix text failed to parse.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace sph
