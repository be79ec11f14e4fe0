#pragma once

#include <stdexcept>
#include <string>

namespace qec {

// Exit codes: 0 success, 1 input error, 2 numerical error, 3 invariant violation.

class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

inline int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InputError*>(&e)) return 1;
  if (dynamic_cast<const NumericalError*>(&e)) return 2;
  if (dynamic_cast<const InvariantViolation*>(&e)) return 3;
  return 3;
}

}  // namespace qec
