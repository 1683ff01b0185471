#pragma once

#include <stdexcept>
#include <string>

namespace latspec {

// Bad caller input: wrong lengths, non-finite values, dimension mismatch.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Evaluation requested where the function is not defined (e.g. inside a band).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Request exceeds a configured size limit.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An iterative procedure failed to converge or bracket.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed model document. what() carries "<json path>: <reason>".
class ParseError : public std::runtime_error {
public:
    ParseError(std::string path, const std::string& reason)
        : std::runtime_error(path + ": " + reason), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace latspec
