#pragma once

#include <stdexcept>
#include <string>

namespace pavlab {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Query needs sequence elements past the end of an explicit ratio list.
struct ExhaustedSequenceError : Error {
    using Error::Error;
};

// A computation would exceed a configured memory or block budget.
struct BudgetError : Error {
    using Error::Error;
};

// An operation requires the family's mutual-coprimality flag and it is
// either unverified or verified false.
struct NotMutuallyCoprimeError : Error {
    using Error::Error;
};

// A certified-interval value straddles a decision boundary, so the
// requested comparison cannot be settled at the current precision.
struct PrecisionError : Error {
    using Error::Error;
};

// Outward coprime scan exceeded its step cap.
struct ScanCapError : Error {
    using Error::Error;
};

// An exact-mode operation was handed a value only available as a float.
struct ExactPolicyError : Error {
    using Error::Error;
};

// Malformed or out-of-schema configuration input.
struct ConfigError : Error {
    using Error::Error;
};

// Argument outside an operation's stated domain.
struct DomainError : Error {
    using Error::Error;
};

}
