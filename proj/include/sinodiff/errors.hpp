#pragma once

#include <stdexcept>
#include <string>

namespace sinodiff {

/// Base error carrying a stable machine-parseable code alongside the message.
/// The CLI prints failures as "error: <code>: <message>" on a single line.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& message)
        : Error("invalid-argument", message) {}
};

class UnknownPrompt : public Error {
public:
    explicit UnknownPrompt(const std::string& prompt)
        : Error("unknown-prompt", "prompt \"" + prompt + "\" is not registered"),
          prompt_(prompt) {}
    const std::string& prompt() const noexcept { return prompt_; }

private:
    std::string prompt_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message)
        : Error("config-error", message) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error("io-error", message) {}
};

class IncompatibleCheckpoint : public Error {
public:
    explicit IncompatibleCheckpoint(const std::string& message)
        : Error("incompatible-checkpoint", message) {}
};

}  // namespace sinodiff
