#pragma once

#include <stdexcept>
#include <string>

namespace devann {

// Bad settings supplied by the user (arity/length/threshold out of range).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A caller broke an operation's precondition.
struct ContractError : std::runtime_error {
    explicit ContractError(const std::string& msg) : std::runtime_error(msg) {}
};

// A file could not be read or parsed.
struct LoadError : std::runtime_error {
    explicit LoadError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace devann
