// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace condlab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input: violated precondition, unknown config key, malformed grid.
class ValidationError : public Error {
public:
    using Error::Error;
};

class DomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class TruncationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DivergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SolverError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class FitQualityError : public Error {
public:
    using Error::Error;
};

}  // namespace condlab
