#pragma once

#include <stdexcept>
#include <string>

namespace hawkes {

/// Base class for all library-specific failures.
class HawkesError : public std::runtime_error {
public:
    explicit HawkesError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failures (exit code 2 in the CLI).
class NumericError : public HawkesError {
public:
    using HawkesError::HawkesError;
};

class NonStationaryError : public NumericError {
public:
    using NumericError::NumericError;
};

class SingularSystemError : public NumericError {
public:
    using NumericError::NumericError;
};

class SingularCovarianceError : public NumericError {
public:
    using NumericError::NumericError;
};

class EventBudgetExceededError : public NumericError {
public:
    using NumericError::NumericError;
};

class NonMonotoneKernelError : public NumericError {
public:
    using NumericError::NumericError;
};

class NonMonotoneCompensatorError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Contract violations on inputs (exit code 1 in the CLI).
class UsageError : public HawkesError {
public:
    using HawkesError::HawkesError;
};

class ComponentOutOfRangeError : public UsageError {
public:
    using UsageError::UsageError;
};

class TimeOutOfRangeError : public UsageError {
public:
    using UsageError::UsageError;
};

class InvalidBinWidthError : public UsageError {
public:
    using UsageError::UsageError;
};

class LagOutOfRangeError : public UsageError {
public:
    using UsageError::UsageError;
};

class InsufficientDataError : public UsageError {
public:
    using UsageError::UsageError;
};

class OverlappingSetsError : public UsageError {
public:
    using UsageError::UsageError;
};

class PositionOutOfRangeError : public UsageError {
public:
    using UsageError::UsageError;
};

class TooFewEventsError : public UsageError {
public:
    using UsageError::UsageError;
};

class ParseError : public UsageError {
public:
    using UsageError::UsageError;
};

} // namespace hawkes
