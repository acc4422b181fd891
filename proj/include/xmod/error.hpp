#pragma once

#include <stdexcept>
#include <string>

namespace xmod {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Structural misuse: index out of range, incomposable pair, level mismatch.
class DomainError : public Error {
  public:
    using Error::Error;
};

// Raised by transgress_class when the input cochain is not closed.
class NotACocycle : public Error {
  public:
    using Error::Error;
};

// Raised when a nerve level would exceed the configured cell budget.
class ResourceLimit : public Error {
  public:
    using Error::Error;
};

// Malformed input text.
class ParseError : public Error {
  public:
    ParseError(const std::string& where, const std::string& what)
        : Error(where.empty() ? what : where + ": " + what) {}
};

} // namespace xmod
