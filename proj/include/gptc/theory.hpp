#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gptc/circuit.hpp"
#include "gptc/transfer.hpp"

namespace gptc {

/// A gate reference from a circuit document: name plus JSON-typed arguments
/// (numbers, vectors, matrices; complex entries as [re, im] pairs).
struct GateSpec {
  std::string name;
  std::vector<nlohmann::json> args;
};

/// A theory supplies the numerical content of the framework for a registry
/// of wire types: fiducial counts, identities, trace effects, gate
/// constructors, and validity/homogeneity predicates. Both built-in theories
/// are locally tomographic, so composite fiducial counts multiply.
class Theory {
 public:
  virtual ~Theory() = default;

  virtual const std::string& name() const = 0;

  /// Registers a wire-type label with N distinguishable states. Call before
  /// first use; theories are immutable once circuits reference them.
  virtual void declare_type(const std::string& label, int n) = 0;
  bool has_type(const std::string& label) const;
  int distinguishable_count(const std::string& label) const;
  std::vector<std::string> type_labels() const;

  virtual int fiducial_count(const std::string& label) const = 0;
  int fiducial_count(const SystemType& system) const;

  TransferMatrix identity(const SystemType& system) const;
  virtual EffectVector trace_effect(const SystemType& system) const = 0;

  /// Canonical norm-one state substituted for a closed input port.
  virtual StateVector closure_state(const std::string& label) const = 0;

  virtual ValidationReport validate_transfer(const TransferMatrix& z) const = 0;

  /// True iff the state decomposes only into parallel states.
  virtual bool is_homogeneous(const StateVector& state) const = 0;

  /// Per-outcome transfer matrices of a named gate for the given port
  /// signature. Throws Error for unknown gates or signature mismatches.
  virtual std::vector<TransferMatrix> make_gate(
      const GateSpec& gate, const SystemType& in,
      const SystemType& out) const = 0;

  /// Gate names accepted by make_gate.
  virtual std::vector<std::string> gate_names() const = 0;

 protected:
  std::map<std::string, int> types_;  // label -> N
};

/// Built-in theory lookup by name ("classical" or "quantum").
std::unique_ptr<Theory> make_theory(const std::string& name);

}  // namespace gptc
