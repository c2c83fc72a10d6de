#pragma once

#include <stdexcept>

namespace dvr {

/// Input that violates the general-position assumption (e.g. coincident points).
class DegenerateInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation that is well-posed but has no answer for this input
/// (no component-count plateau, oversize oracle, ...).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dvr
