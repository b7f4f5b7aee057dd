#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gptc/system_type.hpp"

namespace gptc {

/// One aperture of an operation. Closed ports never carry wires; closing is
/// a port attribute, not an operation of its own.
struct Port {
  std::string type;
  bool closed = false;
};

/// One use of an apparatus: typed input/output ports, an opaque setting
/// token, and a finite non-empty outcome space (a no-readout apparatus has
/// exactly one outcome).
struct OperationNode {
  std::string id;
  std::vector<Port> inputs;
  std::vector<Port> outputs;
  std::string setting;
  std::vector<std::string> outcomes = {"0"};

  SystemType input_type() const;   // all input ports, in port order
  SystemType output_type() const;  // all output ports, in port order
};

struct PortRef {
  std::string op;
  int port = 0;

  auto operator<=>(const PortRef&) const = default;
};

/// Directed connection from an output port to an input port of equal type.
struct Wire {
  std::string id;
  PortRef source;  // (operation id, output port index)
  PortRef target;  // (operation id, input port index)
  std::string type;
};

enum class ViolationKind {
  duplicate_operation,
  duplicate_wire,
  unknown_endpoint,
  bad_port_index,
  type_mismatch,
  port_double_use,
  wire_on_closed_port,
  directed_cycle,
  empty_outcome_space,
  duplicate_outcome,
  invalid_transfer,
};

struct Violation {
  ViolationKind kind;
  std::string message;
  std::string subject;  // id of the wire or operation involved, when known
  std::vector<std::string> cycle_witness;  // operation ids, for directed_cycle
};

/// Violations are data, not failures; a circuit is valid iff the report is
/// empty.
struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string str() const;
};

/// Immutable DAG of typed operations and wires. Build with CircuitBuilder;
/// arbitrary graph data is accepted and judged by validate().
class Circuit {
 public:
  Circuit() = default;

  const std::vector<OperationNode>& operations() const { return ops_; }
  const std::vector<Wire>& wires() const { return wires_; }

  bool has_operation(const std::string& id) const;
  bool has_wire(const std::string& id) const;
  const OperationNode& operation(const std::string& id) const;
  const Wire& wire(const std::string& id) const;

  /// Wire ids attached to the operation's input ports, in port order.
  /// Only meaningful on valid circuits (no double-use).
  std::vector<std::string> input_wires(const std::string& op_id) const;
  std::vector<std::string> output_wires(const std::string& op_id) const;

  /// Every open port is wire-attached. Fragments may be unclosed.
  bool is_closed() const;

  ValidationReport validate() const;

 private:
  friend class CircuitBuilder;

  std::vector<OperationNode> ops_;
  std::vector<Wire> wires_;
  std::map<std::string, std::size_t> op_index_;
  std::map<std::string, std::size_t> wire_index_;
  // (op, port) -> wire ids, input and output sides; first writer wins for
  // accessors, all entries kept for double-use detection.
  std::map<PortRef, std::vector<std::string>> wires_at_input_;
  std::map<PortRef, std::vector<std::string>> wires_at_output_;
};

class CircuitBuilder {
 public:
  CircuitBuilder& add_operation(OperationNode op);
  /// Convenience: in/out types only, all ports open, single outcome.
  CircuitBuilder& add_operation(const std::string& id,
                                const std::vector<std::string>& in_types,
                                const std::vector<std::string>& out_types,
                                int n_outcomes = 1);
  CircuitBuilder& add_wire(const std::string& id, const PortRef& source,
                           const PortRef& target);
  CircuitBuilder& add_wire(Wire w);
  CircuitBuilder& close_input(const std::string& op, int port);
  CircuitBuilder& close_output(const std::string& op, int port);

  Circuit build();

 private:
  Circuit c_;
};

/// Pure graph check: type mismatches, cycles (with a witness), port
/// double-use, wires on closed ports, dangling references.
ValidationReport validate(const Circuit& circuit);

/// Disjoint union. Ids of the second circuit must not collide with the
/// first; use `prefix` to rename them (applied to ops and wires).
Circuit disjoint_union(const Circuit& a, const Circuit& b,
                       const std::string& prefix_a = "",
                       const std::string& prefix_b = "");

}  // namespace gptc
