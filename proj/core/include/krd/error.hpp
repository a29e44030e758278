#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace krd {

/// Base class for every exception thrown by krd.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// unit_inverse called on an element whose x^0 coefficient is not a nonzero constant.
class NotAUnit : public Error {
 public:
  using Error::Error;
};

/// The level increment of an automorphism is not the gradient of a Hamiltonian.
class NonHamiltonianIncrement : public Error {
 public:
  using Error::Error;
};

/// lift_to_A4 was given a map that is not congruent to the identity modulo x^d.
class NotInFiltration : public Error {
 public:
  using Error::Error;
};

/// No rational point was found on a curve component within the search bound.
class NoRationalPoint : public Error {
 public:
  using Error::Error;
};

/// A certificate identity failed to verify. Signals an internal bug.
class CertificateFailure : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace krd
