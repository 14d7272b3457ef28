#pragma once

#include <stdexcept>
#include <string>

namespace bnnfit {

// Input errors map to CLI exit code 2, numerical errors to exit code 3.

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InputError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public InputError {
public:
    using InputError::InputError;
};

class DimensionMismatch : public InputError {
public:
    using InputError::InputError;
};

class EmptyInput : public InputError {
public:
    using InputError::InputError;
};

class SampleOutOfDomain : public InputError {
public:
    using InputError::InputError;
};

class FunctionConsistencyViolation : public InputError {
public:
    using InputError::InputError;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t row)
        : InputError("row " + std::to_string(row) + ": " + what), row_(row) {}

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

class SingularSimplex : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateBarcode : public NumericalError {
public:
    DegenerateBarcode()
        : NumericalError("DegenerateBarcode: total bar length is zero") {}
    using NumericalError::NumericalError;
};

}  // namespace bnnfit
