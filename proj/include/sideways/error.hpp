#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sideways {

// Raised when a caller breaks a documented precondition (width mismatch,
// out-of-range parameters, missing traces, ...).
class contract_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sideways
