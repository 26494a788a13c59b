#pragma once

#include <stdexcept>
#include <string>

namespace vmcorr {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An unscaled Bessel value is not representable as a double.
class OverflowError : public Error {
 public:
  using Error::Error;
};

class SeriesNotConverged : public Error {
 public:
  SeriesNotConverged(const std::string& what, long terms_used)
      : Error(what), terms_used_(terms_used) {}
  long terms_used() const noexcept { return terms_used_; }

 private:
  long terms_used_;
};

// A population correlation denominator vanished (limiting parameters).
class DegenerateDistribution : public Error {
 public:
  using Error::Error;
};

// A sample statistic denominator vanished.
class DegenerateData : public Error {
 public:
  using Error::Error;
};

class UndefinedMean : public Error {
 public:
  using Error::Error;
};

class EnvelopeTooTight : public Error {
 public:
  using Error::Error;
};

class ResolutionCapExceeded : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace vmcorr
