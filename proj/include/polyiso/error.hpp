#pragma once

#include <stdexcept>
#include <string>

namespace polyiso {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is affinely dependent (coplanar, collinear) or has zero volume.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An interval endpoint left the finite doubles.
class OverflowError : public Error {
 public:
  using Error::Error;
};

class InvalidApexPair : public Error {
 public:
  using Error::Error;
};

class NotOctahedralType : public Error {
 public:
  using Error::Error;
};

/// A certified inequality could not be established. `claim()` names it.
class CertificationFailed : public Error {
 public:
  CertificationFailed(std::string claim, const std::string& what)
      : Error(what), claim_(std::move(claim)) {}
  const std::string& claim() const noexcept { return claim_; }

 private:
  std::string claim_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace polyiso
