#pragma once

#include <stdexcept>
#include <string>

namespace dunkl {

// Base for every error raised by the library. Callers that only need to
// report a failure can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A square root argument went negative. `what()` names the radicand.
class NegativeRadicand : public Error {
 public:
  NegativeRadicand(std::string radicand, double value);
  const std::string& radicand() const noexcept { return radicand_; }
  double value() const noexcept { return value_; }

 private:
  std::string radicand_;
  double value_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class AsymmetricGrid : public Error {
 public:
  using Error::Error;
};

class InconsistentParity : public Error {
 public:
  using Error::Error;
};

class BlowUp : public Error {
 public:
  using Error::Error;
};

class SingularSolve : public Error {
 public:
  using Error::Error;
};

class ZeroState : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dunkl
