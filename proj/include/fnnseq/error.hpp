#pragma once

#include <stdexcept>
#include <string>

namespace fnnseq {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite or otherwise unusable input data.
class InputError : public Error {
public:
    using Error::Error;
};

/// Caller broke a precondition (dimension mismatch, bad index, bad config).
class ContractError : public Error {
public:
    using Error::Error;
};

/// External input supplied in autonomous mode, or missing while priming.
class ModeError : public Error {
public:
    using Error::Error;
};

/// Rule base has no rules yet.
class EmptyRulebaseError : public Error {
public:
    using Error::Error;
};

/// Every rule activation is zero, so normalization is undefined.
class DegenerateActivationError : public Error {
public:
    using Error::Error;
};

} // namespace fnnseq
