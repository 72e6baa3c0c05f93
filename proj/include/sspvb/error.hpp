#pragma once

#include <stdexcept>
#include <string>

namespace sspvb {

/// Raised for malformed or out-of-contract inputs: bad CSV cells, mismatched
/// series, invalid configuration values.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sspvb
