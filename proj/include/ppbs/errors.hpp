#pragma once

#include <stdexcept>
#include <string>

namespace ppbs {

// Invalid input: bad parameters, malformed documents, violated preconditions.
// The CLI maps this to exit code 1.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Numerically degenerate situation: zero coincidence probability, non-unitary
// transform beyond tolerance, PSD violation. The CLI maps this to exit code 2.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ppbs
