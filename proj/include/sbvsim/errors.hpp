#pragma once

#include <stdexcept>
#include <string>

namespace sbvsim {

/// Input outside a model's validity region (bad frequency, negative
/// distance, operator index out of range, ...).
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent configuration / data file content.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace sbvsim
