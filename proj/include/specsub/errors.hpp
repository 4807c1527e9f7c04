#pragma once

#include <stdexcept>
#include <string>

namespace specsub {

// Invalid configuration or call-contract violation (bad flag value, wrong
// buffer length, unusable window/overlap pair). The CLI maps these to exit 1.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Window whose squared overlap sum is not constant at the requested hop.
class ColaError : public ConfigError {
public:
    explicit ColaError(const std::string& msg) : ConfigError(msg) {}
};

// Malformed or unsupported input data (broken WAV header, stereo input,
// zero-power noise reference). The CLI maps these to exit 2.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace specsub
