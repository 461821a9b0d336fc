#pragma once

#include <stdexcept>
#include <string>

namespace toric {

/// Input violates a documented precondition or schema. Maps to CLI exit code 1.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A safeguard step budget ran out before an iterative procedure finished.
class BudgetExceeded : public InputError {
public:
    using InputError::InputError;
};

/// An engine invariant failed (a bug, or a contradiction of a proven property).
/// Maps to CLI exit code 2.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace toric
