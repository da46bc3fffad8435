#pragma once

#include <stdexcept>
#include <string>

namespace rlab {

// Error taxonomy mirrors the CLI exit codes: usage 1, data 2, limits 3.

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct LimitError : std::runtime_error {
    explicit LimitError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rlab
