#ifndef KRIVINE_ERRORS_HPP
#define KRIVINE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace krivine {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidPrecision : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class MaxTermsExceeded : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class NonFiniteEvaluation : public Error {
 public:
  using Error::Error;
};

class BracketFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace krivine

#endif  // KRIVINE_ERRORS_HPP
