#pragma once

#include <stdexcept>
#include <string>

namespace plumbcalc {

// A precondition of an operation does not hold for the given input.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// The input needs a move or construction this library does not implement.
class OutOfScopeError : public std::runtime_error {
public:
    explicit OutOfScopeError(const std::string& what) : std::runtime_error(what) {}
};

// Something that should be impossible happened (e.g. a move budget ran out).
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace plumbcalc
