#pragma once

#include <stdexcept>
#include <string>

namespace glucospec {

/// Invalid run configuration or parameters (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Failure inside the numeric pipeline, annotated with the stage and,
/// where known, the sample that triggered it (CLI exit code 3).
class PipelineError : public std::runtime_error {
public:
    explicit PipelineError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Filesystem / parsing trouble (CLI exit code 4).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace glucospec
