#include "gptc/theory.hpp"

#include "gptc/classical.hpp"
#include "gptc/error.hpp"
#include "gptc/quantum.hpp"

namespace gptc {

bool Theory::has_type(const std::string& label) const {
  return types_.count(label) > 0;
}

int Theory::distinguishable_count(const std::string& label) const {
  auto it = types_.find(label);
  if (it == types_.end()) throw Error("unknown wire type: " + label);
  return it->second;
}

std::vector<std::string> Theory::type_labels() const {
  std::vector<std::string> out;
  for (const auto& [label, n] : types_) out.push_back(label);
  return out;
}

int Theory::fiducial_count(const SystemType& system) const {
  int k = 1;
  for (const auto& f : system.factors) k *= fiducial_count(f);
  return k;
}

TransferMatrix Theory::identity(const SystemType& system) const {
  const int k = fiducial_count(system);
  TransferMatrix out;
  out.input = system;
  out.output = system;
  out.z = Eigen::MatrixXd::Identity(k, k);
  out.label = "id(" + system.str() + ")";
  return out;
}

std::unique_ptr<Theory> make_theory(const std::string& name) {
  if (name == "classical") return std::make_unique<ClassicalTheory>();
  if (name == "quantum") return std::make_unique<QuantumTheory>();
  throw Error("unknown theory: " + name);
}

}  // namespace gptc
