#pragma once

#include <stdexcept>
#include <string>

namespace citesim {

// Invalid parameters or configuration. Maps to CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data, or a violated graph invariant.
// Maps to CLI exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace citesim
