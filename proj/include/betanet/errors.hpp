#pragma once

#include <stdexcept>
#include <string>

namespace betanet {

// Precondition / domain violations. The CLI maps these to exit status 2.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed or missing input files; carries the offending line (0 if none).
class LoadError : public std::runtime_error {
public:
    LoadError(const std::string& path, int line, const std::string& what)
        : std::runtime_error(path + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

}  // namespace betanet
