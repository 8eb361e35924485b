#pragma once

#include <stdexcept>

namespace floorsum {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Integer input or intermediate result outside the supported range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A table would exceed the configured memory budget (FLOORSUM_MEM_MB).
class MemoryBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input (function specs, words, rationals, growth classes).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace floorsum
