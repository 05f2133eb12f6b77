#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace skyroute {

// Base of every error thrown by the library. Callers that only care about
// "planning failed" can catch this; the CLI maps NoPath to its own exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Polygon with fewer than three points or all points collinear.
class DegenerateObstacle : public Error {
 public:
  using Error::Error;
};

class OutOfBounds : public Error {
 public:
  using Error::Error;
};

// Source/destination outside the lattice or buried inside an obstacle.
class InvalidEndpoint : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class NoPath : public Error {
 public:
  explicit NoPath(const std::string& message,
                  std::optional<std::size_t> leg = std::nullopt)
      : Error(message), leg_(leg) {}

  // Index of the failing leg for multi-stop journeys.
  std::optional<std::size_t> leg() const { return leg_; }

 private:
  std::optional<std::size_t> leg_;
};

}  // namespace skyroute
