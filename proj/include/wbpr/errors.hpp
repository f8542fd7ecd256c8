#pragma once

#include <stdexcept>
#include <string>

namespace wbpr {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point outside the open disc / strip, or a parameter outside its range.
class DomainError : public Error {
 public:
  using Error::Error;
};

class RootOnCircle : public Error {
 public:
  using Error::Error;
};

class ResamplingError : public Error {
 public:
  using Error::Error;
};

class SelectionError : public Error {
 public:
  using Error::Error;
};

class DominanceViolated : public Error {
 public:
  using Error::Error;
};

class OddnessViolated : public Error {
 public:
  using Error::Error;
};

class InvalidModifier : public Error {
 public:
  using Error::Error;
};

class NotUnimodular : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class DepthTooLarge : public Error {
 public:
  using Error::Error;
};

class ZeroReference : public Error {
 public:
  using Error::Error;
};

// Malformed JSON / CSV input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace wbpr
