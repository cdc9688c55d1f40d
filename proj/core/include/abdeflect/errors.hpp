#pragma once

#include <stdexcept>
#include <string>

namespace abdeflect {

/// Precondition violation: inputs outside an operation's stated domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Field or force requested at a singular point (coincident source point,
/// query on the solenoid surface, query too close to a line charge).
class SingularityError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A numerical integration failed to meet the requested tolerance.
/// Carries the error estimate that was actually achieved.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_error_(achieved) {}
    double achieved_error() const { return achieved_error_; }

private:
    double achieved_error_;
};

/// Bad CLI / scenario configuration (unknown key, malformed value, ...).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace abdeflect
