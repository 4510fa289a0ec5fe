#pragma once

#include <stdexcept>
#include <string>

namespace supercong {

// Base class for every error this library throws on purpose. Callers that
// want a single catch site can catch this; the CLI maps it to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Modular inverse requested for a residue that shares a factor with the
// modulus.
class NotAUnit : public Error {
public:
    using Error::Error;
};

// A rational could not be reduced mod p^r because p divides its denominator.
class DenominatorNotInvertible : public Error {
public:
    using Error::Error;
};

// Bernoulli table lookup outside the range the table carries.
class IndexOutOfTable : public Error {
public:
    using Error::Error;
};

// An evaluation would exceed the configured work budget.
class WorkBudgetExceeded : public Error {
public:
    using Error::Error;
};

// Gap count g outside 1 <= g <= min(kappa - 1, n - 2).
class InvalidGapCount : public Error {
public:
    using Error::Error;
};

// A documented precondition does not hold (bad n/m/p/r combination, window
// out of range, and so on).
class PreconditionViolated : public Error {
public:
    using Error::Error;
};

// A closed form was requested for an order m outside the supported range.
class UnsupportedM : public Error {
public:
    using Error::Error;
};

// Interpolated coefficients failed validation at extra sample points.
class InterpolationMismatch : public Error {
public:
    using Error::Error;
};

// Verifier asked for a lemma sweep it does not know.
class UnknownLemmaName : public Error {
public:
    using Error::Error;
};

} // namespace supercong
