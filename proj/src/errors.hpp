#pragma once

#include <stdexcept>
#include <string>

namespace autonorm {

// Library error hierarchy. The C API maps each class to a status code;
// the CLI maps them to distinct exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input is structurally valid but statistically unusable (constant vector,
// zero dispersion). Pipelines report this as a degenerate outcome rather
// than failing.
class DegenerateInput : public Error {
public:
    explicit DegenerateInput(const std::string& msg) : Error(msg) {}
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

}  // namespace autonorm
