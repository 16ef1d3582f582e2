#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gammareg {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain an operation accepts.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A count or length is too small (or inconsistent).
class SizeError : public Error {
 public:
  using Error::Error;
};

// Degenerate geometry: collinear point sets, failed hull construction.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Malformed text input (CSV, PhiSpec strings).
class ParseError : public Error {
 public:
  using Error::Error;
};

// The discretization cannot resolve the requested scale. Carries the smallest
// grid size that would, when one can be computed (0 otherwise).
class ResolutionError : public Error {
 public:
  ResolutionError(const std::string& what, std::size_t suggested_n = 0)
      : Error(what), suggested_n_(suggested_n) {}

  std::size_t suggested_n() const noexcept { return suggested_n_; }

 private:
  std::size_t suggested_n_;
};

}  // namespace gammareg
