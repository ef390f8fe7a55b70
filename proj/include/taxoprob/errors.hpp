#pragma once

#include <stdexcept>
#include <string>

namespace taxoprob {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An identifier that is not part of the declared universe.
class UnknownIdentifierError : public Error {
public:
    explicit UnknownIdentifierError(const std::string& name)
        : Error("unknown identifier '" + name + "'"), name_(name) {}

    [[nodiscard]] const std::string& name() const { return name_; }

private:
    std::string name_;
};

class AtomSpaceTooLargeError : public Error {
public:
    using Error::Error;
};

// Raised when an interval intersection becomes empty: an asserted or deduced
// bound contradicts what the rest of the knowledge base forces.
class ProbabilisticConflictError : public Error {
public:
    using Error::Error;
};

class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace taxoprob
