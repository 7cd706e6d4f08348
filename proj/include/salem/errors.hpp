#pragma once

#include <stdexcept>
#include <string>

namespace salem {

// Every failure mode gets its own exception type so callers can react
// precisely (retry with more precision, grow a search bound, reject input).
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define SALEM_DEFINE_ERROR(Name)                                              \
    struct Name : Error {                                                     \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}  \
    }

SALEM_DEFINE_ERROR(NonSquarefree);      // repeated root detected
SALEM_DEFINE_ERROR(PrecisionExhausted); // iteration failed to certify at the requested digits
SALEM_DEFINE_ERROR(Inconclusive);       // numeric evidence too weak either way
SALEM_DEFINE_ERROR(NotInvertible);      // inverse action needed but |f_0| != 1
SALEM_DEFINE_ERROR(NotIrreducible);     // polynomial factors over the integers
SALEM_DEFINE_ERROR(CyclotomicInput);    // all roots are roots of unity
SALEM_DEFINE_ERROR(NotReal);            // imaginary residual above tolerance
SALEM_DEFINE_ERROR(EmptyResult);        // no admissible value exists
SALEM_DEFINE_ERROR(WindowTooSmall);     // window does not cover the needed indices
SALEM_DEFINE_ERROR(NonIntegerResidual); // expected-integer value too far from an integer
SALEM_DEFINE_ERROR(DigitOutOfRange);    // digit outside [0, digit_max]
SALEM_DEFINE_ERROR(PreconditionViolated);
SALEM_DEFINE_ERROR(InvalidPath);        // chain path uses a missing edge
SALEM_DEFINE_ERROR(NotSalem);           // operation requires a Salem polynomial
SALEM_DEFINE_ERROR(InsertionFailed);    // no admissible insertion length in range

#undef SALEM_DEFINE_ERROR

} // namespace salem
