#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hhv {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition (bad interval, parameter out of range, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed expression text. `offset` is the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownIdentifier : public ParseError {
 public:
  UnknownIdentifier(const std::string& name, std::size_t offset)
      : ParseError("unknown identifier '" + name + "'", offset), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// An operation left its mathematical domain (ln of a non-positive value, 0^-1, overflow, ...).
class DomainError : public Error {
 public:
  DomainError(const std::string& msg, double x)
      : Error(msg + " (x = " + std::to_string(x) + ")"), x_(x) {}
  double x() const noexcept { return x_; }

 private:
  double x_;
};

/// The function value at `x` is not strictly positive and finite.
class PositivityError : public Error {
 public:
  PositivityError(double x, double value)
      : Error("f(" + std::to_string(x) + ") = " + std::to_string(value) + " is not strictly positive"),
        x_(x),
        value_(value) {}
  double x() const noexcept { return x_; }
  double value() const noexcept { return value_; }

 private:
  double x_;
  double value_;
};

/// An integrand failed or produced a non-finite value at `abscissa`.
class IntegrandError : public Error {
 public:
  IntegrandError(const std::string& msg, double abscissa)
      : Error("integrand failure at x = " + std::to_string(abscissa) + ": " + msg),
        abscissa_(abscissa) {}
  double abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

}  // namespace hhv

namespace hhv {

/// A function evaluation failed while checking the triple (x, y, t).
class TripleError : public Error {
 public:
  TripleError(const std::string& msg, double x, double y, double t)
      : Error("evaluation failed at (x, y, t) = (" + std::to_string(x) + ", " + std::to_string(y) +
              ", " + std::to_string(t) + "): " + msg),
        x_(x),
        y_(y),
        t_(t) {}
  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  double t() const noexcept { return t_; }

 private:
  double x_, y_, t_;
};

/// Reading or writing an output artifact failed.
class IoError : public Error {
 public:
  IoError(const std::string& msg, const std::string& path) : Error(path + ": " + msg), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace hhv
