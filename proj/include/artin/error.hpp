#pragma once

#include <stdexcept>
#include <string>

namespace artin {

// Base for every failure raised by the library. The CLI maps these to exit 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Evaluation at a pole (Gamma at non-positive integers, zeta at s = 1).
class PoleError : public Error {
public:
    using Error::Error;
};

// Argument outside the documented domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// Requested accuracy cannot be reached with the given series/quadrature budget.
class AccuracyError : public Error {
public:
    using Error::Error;
};

// Iterative procedure hit its iteration cap.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// A configured size limit (height, mode count, sample count, factorization) was exceeded.
class BudgetError : public Error {
public:
    using Error::Error;
};

}  // namespace artin
