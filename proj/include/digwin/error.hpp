#pragma once

#include <stdexcept>
#include <string>

namespace digwin {

// Library-level error: precondition violations, malformed inputs, size caps.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace digwin
