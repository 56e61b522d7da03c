#pragma once

#include <stdexcept>
#include <string>

namespace rtm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller-side mistakes: bad indices, parameters, malformed text.
class ParameterError : public Error {
public:
    using Error::Error;
};

class IndexError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class ParseError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class MembershipError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class DomainError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class PatternError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class SamplingError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

// Everything a decoder can raise on inputs outside its guaranteed class.
class DecodeError : public Error {
public:
    using Error::Error;
};

class ConstraintViolation : public DecodeError {
public:
    using DecodeError::DecodeError;
};

class LengthError : public DecodeError {
public:
    using DecodeError::DecodeError;
};

class SyndromeError : public DecodeError {
public:
    using DecodeError::DecodeError;
};

class DecodeFailure : public DecodeError {
public:
    using DecodeError::DecodeError;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace rtm
