#pragma once

#include <stdexcept>
#include <string>

namespace shssa {

/// Base error carrying a short machine-readable code such as "window_range".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Invalid user input or configuration (CLI exit code 2).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Failure while computing with valid input (CLI exit code 1).
class ComputeError : public Error {
public:
    using Error::Error;
};

}  // namespace shssa
