#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace gptc {

/// Ordered list of wire-type labels. The empty list is the null system,
/// which has exactly one fiducial effect; states on it are scalars.
struct SystemType {
  std::vector<std::string> factors;

  SystemType() = default;
  SystemType(std::initializer_list<std::string> fs) : factors(fs) {}
  explicit SystemType(std::vector<std::string> fs) : factors(std::move(fs)) {}

  bool is_null() const { return factors.empty(); }
  std::size_t size() const { return factors.size(); }

  bool operator==(const SystemType&) const = default;

  std::string str() const {
    if (factors.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) out += "*";
      out += factors[i];
    }
    return out;
  }
};

inline SystemType concat(const SystemType& a, const SystemType& b) {
  SystemType out = a;
  out.factors.insert(out.factors.end(), b.factors.begin(), b.factors.end());
  return out;
}

}  // namespace gptc
