#pragma once

#include <stdexcept>
#include <string>

namespace lr {

// Malformed or inconsistent input: bad files, shape mismatches, out-of-range
// arguments. The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numeric computation left the finite domain (e.g. diverging training
// loss). The CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace lr
