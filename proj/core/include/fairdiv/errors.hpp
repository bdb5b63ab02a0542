#pragma once

#include <stdexcept>
#include <string>

namespace fairdiv {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent user input (files, flags, ids).
class InputError : public Error {
public:
    using Error::Error;
};

// An operation was called outside its documented preconditions.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// A desk-scale size guard rejected the input before any search started.
class SizeGuardError : public Error {
public:
    using Error::Error;
};

// An exhaustive search ran past its state budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace fairdiv
