#pragma once

#include <stdexcept>
#include <string>

namespace rsell {

/// Base class for all domain errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A model parameter violated its admissible range. `field()` names it.
class OutOfRange : public Error {
 public:
  OutOfRange(std::string field, const std::string& what)
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class MeanMismatch : public Error {
 public:
  using Error::Error;
};

class NoRoot : public Error {
 public:
  using Error::Error;
};

class NoContact : public Error {
 public:
  using Error::Error;
};

class InvalidRegion : public Error {
 public:
  using Error::Error;
};

class RegionMismatch : public Error {
 public:
  using Error::Error;
};

class SingleCrossingViolation : public Error {
 public:
  using Error::Error;
};

class NotLogConcave : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

class Unbounded : public Error {
 public:
  using Error::Error;
};

class IterationLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace rsell
