#pragma once

#include <stdexcept>
#include <string>

namespace cpdshift {

// Violated mathematical precondition: invalid measure, positivity failure,
// out-of-range argument. The CLI maps this to exit code 2.
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

}  // namespace cpdshift
