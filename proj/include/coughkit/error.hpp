#pragma once

#include <stdexcept>
#include <string>

namespace coughkit {

/// File or model content that cannot be parsed/validated.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Inconsistent configuration (model/config window mismatch, missing cost entry, ...).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Prediction-time failure (e.g. a required feature is missing).
class InferenceError : public std::runtime_error {
public:
    explicit InferenceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace coughkit
