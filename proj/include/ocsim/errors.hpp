#pragma once

#include <stdexcept>
#include <string>

namespace ocsim {

// Base class for all simulator errors. The CLI maps configuration and
// usage problems to exit code 1 and runtime failures to exit code 2.
class SimError : public std::runtime_error {
public:
    explicit SimError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad configuration: unknown key, malformed value, violated invariant.
class ConfigError : public SimError {
public:
    explicit ConfigError(const std::string& msg) : SimError(msg) {}
};

// Bad CLI usage: unknown flag, missing argument, unknown subcommand.
class UsageError : public SimError {
public:
    explicit UsageError(const std::string& msg) : SimError(msg) {}
};

// Lookup of an id that does not exist (object, class, page, segment).
class LookupError : public SimError {
public:
    explicit LookupError(const std::string& msg) : SimError(msg) {}
};

// Operation applied in a state that forbids it (full page, duplicate
// placement, buffer misuse).
class StateError : public SimError {
public:
    explicit StateError(const std::string& msg) : SimError(msg) {}
};

// Bad argument to a runtime API (empty class list, invalid directive).
class ArgumentError : public SimError {
public:
    explicit ArgumentError(const std::string& msg) : SimError(msg) {}
};

// Filesystem trouble while writing results.
class IoError : public SimError {
public:
    explicit IoError(const std::string& msg) : SimError(msg) {}
};

} // namespace ocsim
