#pragma once

#include <stdexcept>
#include <string>

namespace gptc {

// Thrown on precondition violations: bad shapes, unknown ids, degenerate
// inputs. Graph-level problems detected by validate() are reported as data,
// not exceptions.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gptc
