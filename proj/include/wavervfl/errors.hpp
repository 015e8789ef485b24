#pragma once

#include <stdexcept>
#include <string>

namespace wavervfl {

// Dimension/shape mismatch between operands.
class ShapeError : public std::invalid_argument {
 public:
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed input file (CSV, fixture, model JSON).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A numeric computation produced non-finite values or a solver failed.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Friedman F_F denominator is not positive (perfect ordering edge case).
class DegenerateStatisticError : public std::runtime_error {
 public:
  explicit DegenerateStatisticError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wavervfl
