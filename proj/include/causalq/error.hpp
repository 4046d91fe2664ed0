#pragma once

#include <stdexcept>
#include <string>

namespace causalq {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an enumeration would exceed the configured evaluation budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace causalq
