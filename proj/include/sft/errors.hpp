#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sft {

// Base of everything this library throws. The CLI maps each subclass to an
// exit code, so new failure kinds should derive from one of these.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller passed something outside an operation's domain (alpha out of range,
// mismatched word lengths, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// A shift specification violates one of the standing assumptions. Carries
// every violation found, not just the first.
class SpecError : public Error {
public:
    explicit SpecError(std::vector<std::string> issues)
        : Error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string out = "invalid shift spec";
        for (const auto& s : issues) {
            out += "; ";
            out += s;
        }
        return out;
    }

    std::vector<std::string> issues_;
};

// Enumeration would exceed the configured work limit.
class BudgetError : public Error {
public:
    using Error::Error;
};

// Singular systems, poles where a value was required, missing roots,
// disagreeing numeric routes.
class NumericError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace sft
