#include "gptc/circuit.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "gptc/error.hpp"

namespace gptc {

SystemType OperationNode::input_type() const {
  SystemType t;
  for (const auto& p : inputs) t.factors.push_back(p.type);
  return t;
}

SystemType OperationNode::output_type() const {
  SystemType t;
  for (const auto& p : outputs) t.factors.push_back(p.type);
  return t;
}

std::string ValidationReport::str() const {
  std::ostringstream os;
  for (const auto& v : violations) os << v.message << "\n";
  return os.str();
}

bool Circuit::has_operation(const std::string& id) const {
  return op_index_.count(id) > 0;
}

bool Circuit::has_wire(const std::string& id) const {
  return wire_index_.count(id) > 0;
}

const OperationNode& Circuit::operation(const std::string& id) const {
  auto it = op_index_.find(id);
  if (it == op_index_.end()) throw Error("unknown operation id: " + id);
  return ops_[it->second];
}

const Wire& Circuit::wire(const std::string& id) const {
  auto it = wire_index_.find(id);
  if (it == wire_index_.end()) throw Error("unknown wire id: " + id);
  return wires_[it->second];
}

std::vector<std::string> Circuit::input_wires(const std::string& op_id) const {
  std::vector<std::string> out;
  const auto& op = operation(op_id);
  for (int p = 0; p < static_cast<int>(op.inputs.size()); ++p) {
    auto it = wires_at_input_.find(PortRef{op_id, p});
    if (it != wires_at_input_.end() && !it->second.empty())
      out.push_back(it->second.front());
  }
  return out;
}

std::vector<std::string> Circuit::output_wires(const std::string& op_id) const {
  std::vector<std::string> out;
  const auto& op = operation(op_id);
  for (int p = 0; p < static_cast<int>(op.outputs.size()); ++p) {
    auto it = wires_at_output_.find(PortRef{op_id, p});
    if (it != wires_at_output_.end() && !it->second.empty())
      out.push_back(it->second.front());
  }
  return out;
}

bool Circuit::is_closed() const {
  for (const auto& op : ops_) {
    for (int p = 0; p < static_cast<int>(op.inputs.size()); ++p) {
      if (op.inputs[p].closed) continue;
      if (!wires_at_input_.count(PortRef{op.id, p})) return false;
    }
    for (int p = 0; p < static_cast<int>(op.outputs.size()); ++p) {
      if (op.outputs[p].closed) continue;
      if (!wires_at_output_.count(PortRef{op.id, p})) return false;
    }
  }
  return true;
}

namespace {

// Cycle witness via iterative DFS over the op graph (edges = wires).
std::vector<std::string> find_cycle(
    const std::vector<OperationNode>& ops,
    const std::map<std::string, std::vector<std::string>>& succ) {
  enum { White, Grey, Black };
  std::map<std::string, int> color;
  for (const auto& op : ops) color[op.id] = White;
  std::map<std::string, std::string> parent;

  for (const auto& op : ops) {
    if (color[op.id] != White) continue;
    std::vector<std::pair<std::string, std::size_t>> stack{{op.id, 0}};
    color[op.id] = Grey;
    while (!stack.empty()) {
      auto& [cur, next] = stack.back();
      const auto it = succ.find(cur);
      const auto& outs =
          it == succ.end() ? std::vector<std::string>{} : it->second;
      if (next < outs.size()) {
        const std::string& nxt = outs[next++];
        if (color[nxt] == Grey) {
          // unwind the witness
          std::vector<std::string> cycle{nxt};
          for (auto rit = stack.rbegin(); rit != stack.rend(); ++rit) {
            cycle.push_back(rit->first);
            if (rit->first == nxt) break;
          }
          std::reverse(cycle.begin(), cycle.end());
          return cycle;
        }
        if (color[nxt] == White) {
          color[nxt] = Grey;
          stack.push_back({nxt, 0});
        }
      } else {
        color[cur] = Black;
        stack.pop_back();
      }
    }
  }
  return {};
}

}  // namespace

ValidationReport Circuit::validate() const { return gptc::validate(*this); }

ValidationReport validate(const Circuit& circuit) {
  ValidationReport report;
  auto add = [&report](ViolationKind kind, const std::string& msg,
                       const std::string& subject = "") {
    report.violations.push_back({kind, msg, subject, {}});
  };

  std::set<std::string> op_ids;
  for (const auto& op : circuit.operations()) {
    if (!op_ids.insert(op.id).second)
      add(ViolationKind::duplicate_operation,
          "duplicate operation id '" + op.id + "'", op.id);
    if (op.outcomes.empty())
      add(ViolationKind::empty_outcome_space,
          "operation '" + op.id + "' has an empty outcome space", op.id);
    std::set<std::string> toks(op.outcomes.begin(), op.outcomes.end());
    if (toks.size() != op.outcomes.size())
      add(ViolationKind::duplicate_outcome,
          "operation '" + op.id + "' repeats an outcome token", op.id);
  }

  std::set<std::string> wire_ids;
  std::map<PortRef, int> in_use, out_use;
  for (const auto& w : circuit.wires()) {
    if (!wire_ids.insert(w.id).second)
      add(ViolationKind::duplicate_wire, "duplicate wire id '" + w.id + "'",
          w.id);

    bool ends_ok = true;
    for (const auto* end : {&w.source, &w.target}) {
      if (!circuit.has_operation(end->op)) {
        add(ViolationKind::unknown_endpoint,
            "wire '" + w.id + "' references unknown operation '" + end->op +
                "'",
            w.id);
        ends_ok = false;
      }
    }
    if (!ends_ok) continue;

    const auto& src_op = circuit.operation(w.source.op);
    const auto& dst_op = circuit.operation(w.target.op);
    if (w.source.port < 0 ||
        w.source.port >= static_cast<int>(src_op.outputs.size())) {
      add(ViolationKind::bad_port_index,
          "wire '" + w.id + "' uses missing output port " +
              std::to_string(w.source.port) + " of '" + src_op.id + "'",
          w.id);
      continue;
    }
    if (w.target.port < 0 ||
        w.target.port >= static_cast<int>(dst_op.inputs.size())) {
      add(ViolationKind::bad_port_index,
          "wire '" + w.id + "' uses missing input port " +
              std::to_string(w.target.port) + " of '" + dst_op.id + "'",
          w.id);
      continue;
    }

    const Port& src = src_op.outputs[w.source.port];
    const Port& dst = dst_op.inputs[w.target.port];
    if (src.type != dst.type)
      add(ViolationKind::type_mismatch,
          "wire '" + w.id + "' connects '" + src.type + "' output to '" +
              dst.type + "' input",
          w.id);
    if (!w.type.empty() && w.type != src.type)
      add(ViolationKind::type_mismatch,
          "wire '" + w.id + "' declares type '" + w.type +
              "' but leaves a '" + src.type + "' output",
          w.id);
    if (src.closed)
      add(ViolationKind::wire_on_closed_port,
          "wire '" + w.id + "' attached to closed output " +
              std::to_string(w.source.port) + " of '" + src_op.id + "'",
          w.id);
    if (dst.closed)
      add(ViolationKind::wire_on_closed_port,
          "wire '" + w.id + "' attached to closed input " +
              std::to_string(w.target.port) + " of '" + dst_op.id + "'",
          w.id);
    if (++out_use[w.source] == 2)
      add(ViolationKind::port_double_use,
          "output port " + std::to_string(w.source.port) + " of '" +
              src_op.id + "' carries more than one wire",
          w.id);
    if (++in_use[w.target] == 2)
      add(ViolationKind::port_double_use,
          "input port " + std::to_string(w.target.port) + " of '" +
              dst_op.id + "' carries more than one wire",
          w.id);
  }

  // Cycle detection only over resolvable wires.
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& w : circuit.wires()) {
    if (circuit.has_operation(w.source.op) &&
        circuit.has_operation(w.target.op) && w.source.op != w.target.op)
      succ[w.source.op].push_back(w.target.op);
    if (circuit.has_operation(w.source.op) && w.source.op == w.target.op) {
      report.violations.push_back(
          {ViolationKind::directed_cycle,
           "wire '" + w.id + "' loops operation '" + w.source.op +
               "' back onto itself",
           w.id,
           {w.source.op}});
    }
  }
  auto cycle = find_cycle(circuit.operations(), succ);
  if (!cycle.empty()) {
    std::string msg = "directed cycle:";
    for (const auto& id : cycle) msg += " " + id;
    report.violations.push_back(
        {ViolationKind::directed_cycle, msg, cycle.front(), cycle});
  }
  return report;
}

CircuitBuilder& CircuitBuilder::add_operation(OperationNode op) {
  c_.op_index_.emplace(op.id, c_.ops_.size());
  c_.ops_.push_back(std::move(op));
  return *this;
}

CircuitBuilder& CircuitBuilder::add_operation(
    const std::string& id, const std::vector<std::string>& in_types,
    const std::vector<std::string>& out_types, int n_outcomes) {
  OperationNode op;
  op.id = id;
  for (const auto& t : in_types) op.inputs.push_back({t, false});
  for (const auto& t : out_types) op.outputs.push_back({t, false});
  op.outcomes.clear();
  for (int k = 0; k < n_outcomes; ++k) op.outcomes.push_back(std::to_string(k));
  return add_operation(std::move(op));
}

CircuitBuilder& CircuitBuilder::add_wire(const std::string& id,
                                         const PortRef& source,
                                         const PortRef& target) {
  Wire w;
  w.id = id;
  w.source = source;
  w.target = target;
  if (c_.op_index_.count(source.op)) {
    const auto& op = c_.ops_[c_.op_index_[source.op]];
    if (source.port >= 0 && source.port < static_cast<int>(op.outputs.size()))
      w.type = op.outputs[source.port].type;
  }
  return add_wire(std::move(w));
}

CircuitBuilder& CircuitBuilder::add_wire(Wire w) {
  c_.wire_index_.emplace(w.id, c_.wires_.size());
  c_.wires_at_output_[w.source].push_back(w.id);
  c_.wires_at_input_[w.target].push_back(w.id);
  c_.wires_.push_back(std::move(w));
  return *this;
}

CircuitBuilder& CircuitBuilder::close_input(const std::string& op, int port) {
  auto it = c_.op_index_.find(op);
  if (it == c_.op_index_.end()) throw Error("close_input: unknown op " + op);
  auto& ports = c_.ops_[it->second].inputs;
  if (port < 0 || port >= static_cast<int>(ports.size()))
    throw Error("close_input: no input port " + std::to_string(port) +
                " on " + op);
  ports[port].closed = true;
  return *this;
}

CircuitBuilder& CircuitBuilder::close_output(const std::string& op, int port) {
  auto it = c_.op_index_.find(op);
  if (it == c_.op_index_.end()) throw Error("close_output: unknown op " + op);
  auto& ports = c_.ops_[it->second].outputs;
  if (port < 0 || port >= static_cast<int>(ports.size()))
    throw Error("close_output: no output port " + std::to_string(port) +
                " on " + op);
  ports[port].closed = true;
  return *this;
}

Circuit CircuitBuilder::build() { return std::move(c_); }

Circuit disjoint_union(const Circuit& a, const Circuit& b,
                       const std::string& prefix_a,
                       const std::string& prefix_b) {
  CircuitBuilder builder;
  auto copy_into = [&builder](const Circuit& c, const std::string& prefix) {
    for (OperationNode op : c.operations()) {
      op.id = prefix + op.id;
      builder.add_operation(std::move(op));
    }
    for (Wire w : c.wires()) {
      w.id = prefix + w.id;
      w.source.op = prefix + w.source.op;
      w.target.op = prefix + w.target.op;
      builder.add_wire(std::move(w));
    }
  };
  copy_into(a, prefix_a);
  copy_into(b, prefix_b);
  return builder.build();
}

}  // namespace gptc
