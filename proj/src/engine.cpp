#include "gptc/engine.hpp"

#include <algorithm>
#include <set>

#include "gptc/error.hpp"

namespace gptc {

namespace {

constexpr double kProbTol = 1e-10;

// Transfer matrix of the operation under the given outcome with closed
// ports contracted away: trace effects on closed outputs, the theory's
// canonical closure state on closed inputs. Input/output systems of the
// result list the open ports only, in port order.
TransferMatrix effective_matrix(const BoundCircuit& bound,
                                const Theory& theory, const std::string& op_id,
                                const std::string& outcome) {
  const OperationNode& op = bound.circuit.operation(op_id);
  TransferMatrix z = bound.matrix_for(op_id, outcome);
  if (z.z.rows() != theory.fiducial_count(z.output) ||
      z.z.cols() != theory.fiducial_count(z.input))
    throw Error("operation '" + op_id +
                "': matrix shape disagrees with the theory");

  for (int k = static_cast<int>(op.outputs.size()) - 1; k >= 0; --k) {
    if (!op.outputs[k].closed) continue;
    SystemType before{std::vector<std::string>(z.output.factors.begin(),
                                               z.output.factors.begin() + k)};
    SystemType after{std::vector<std::string>(z.output.factors.begin() + k + 1,
                                              z.output.factors.end())};
    TransferMatrix contract = tensor_compose(
        tensor_compose(theory.identity(before),
                       TransferMatrix::from_effect(
                           theory.trace_effect(SystemType{op.outputs[k].type})),
                       theory),
        theory.identity(after), theory);
    z = sequential_compose(contract, z);
  }
  for (int k = static_cast<int>(op.inputs.size()) - 1; k >= 0; --k) {
    if (!op.inputs[k].closed) continue;
    SystemType before{std::vector<std::string>(z.input.factors.begin(),
                                               z.input.factors.begin() + k)};
    SystemType after{std::vector<std::string>(z.input.factors.begin() + k + 1,
                                              z.input.factors.end())};
    TransferMatrix insert = tensor_compose(
        tensor_compose(theory.identity(before),
                       TransferMatrix::from_state(
                           theory.closure_state(op.inputs[k].type)),
                       theory),
        theory.identity(after), theory);
    z = sequential_compose(z, insert);
  }
  z.label = op_id + "[" + outcome + "]";
  return z;
}

SystemType wire_types(const Circuit& c, const std::vector<std::string>& ws) {
  SystemType t;
  for (const auto& w : ws) t.factors.push_back(c.wire(w).type);
  return t;
}

std::vector<int> permutation_between(const std::vector<std::string>& from,
                                     const std::vector<std::string>& to) {
  if (from.size() != to.size())
    throw Error("internal: wire order length mismatch");
  std::map<std::string, int> pos;
  for (std::size_t i = 0; i < from.size(); ++i)
    pos[from[i]] = static_cast<int>(i);
  std::vector<int> perm;
  perm.reserve(to.size());
  for (const auto& w : to) {
    auto it = pos.find(w);
    if (it == pos.end()) throw Error("internal: wire orders differ in content");
    perm.push_back(it->second);
  }
  return perm;
}

struct Frontier {
  TransferMatrix cur;                // input system -> current wire system
  std::vector<std::string> order;    // current wire ids, factor order
};

// Applies one step: tensor of the given op matrices (in the order supplied)
// with identities on the remaining wires, preceded by the permutation that
// brings the frontier into [op inputs..., passthrough...] order.
void apply_step(Frontier& f, const Circuit& circuit, const Theory& theory,
                const std::vector<TransferMatrix*>& ops,
                const std::vector<std::vector<std::string>>& op_ins,
                const std::vector<std::vector<std::string>>& op_outs) {
  std::vector<std::string> target;
  std::set<std::string> consumed;
  for (const auto& ins : op_ins)
    for (const auto& w : ins) {
      target.push_back(w);
      consumed.insert(w);
    }
  std::vector<std::string> pass;
  for (const auto& w : f.order)
    if (!consumed.count(w)) pass.push_back(w);
  target.insert(target.end(), pass.begin(), pass.end());

  TransferMatrix perm = wire_permutation_matrix(
      theory, wire_types(circuit, f.order),
      permutation_between(f.order, target));

  TransferMatrix block{SystemType{}, SystemType{},
                       Eigen::MatrixXd::Identity(1, 1), "step"};
  for (const auto* z : ops) block = tensor_compose(block, *z, theory);
  block = tensor_compose(block, theory.identity(wire_types(circuit, pass)),
                         theory);

  f.cur = sequential_compose(block, sequential_compose(perm, f.cur));
  f.order.clear();
  for (const auto& outs : op_outs)
    for (const auto& w : outs) f.order.push_back(w);
  f.order.insert(f.order.end(), pass.begin(), pass.end());
}

void require_valid_closed_bound(const BoundCircuit& bound) {
  auto report = bound.circuit.validate();
  if (!report.ok())
    throw Error("evaluate: invalid circuit: " +
                report.violations.front().message);
  if (!bound.circuit.is_closed())
    throw Error("evaluate: circuit has unattached open ports");
}

}  // namespace

const TransferMatrix& BoundCircuit::matrix_for(
    const std::string& op_id, const std::string& outcome) const {
  auto it = matrices.find(op_id);
  if (it == matrices.end())
    throw Error("no matrices bound for operation '" + op_id + "'");
  const OperationNode& op = circuit.operation(op_id);
  auto pos = std::find(op.outcomes.begin(), op.outcomes.end(), outcome);
  if (pos == op.outcomes.end())
    throw Error("operation '" + op_id + "' has no outcome '" + outcome + "'");
  const auto index =
      static_cast<std::size_t>(std::distance(op.outcomes.begin(), pos));
  if (index >= it->second.size())
    throw Error("operation '" + op_id + "' lacks a matrix for outcome '" +
                outcome + "'");
  return it->second[index];
}

OutcomeAssignment complete_assignment(const BoundCircuit& bound,
                                      const OutcomeAssignment& partial) {
  OutcomeAssignment out;
  for (const auto& op : bound.circuit.operations()) {
    auto it = partial.find(op.id);
    if (it != partial.end()) {
      if (std::find(op.outcomes.begin(), op.outcomes.end(), it->second) ==
          op.outcomes.end())
        throw Error("operation '" + op.id + "' has no outcome '" +
                    it->second + "'");
      out[op.id] = it->second;
    } else if (op.outcomes.size() == 1) {
      out[op.id] = op.outcomes.front();
    } else {
      throw Error("no outcome assigned for operation '" + op.id + "'");
    }
  }
  for (const auto& [id, tok] : partial)
    if (!bound.circuit.has_operation(id))
      throw Error("outcome assigned to unknown operation '" + id + "'");
  return out;
}

std::vector<OutcomeAssignment> all_assignments(const BoundCircuit& bound) {
  std::vector<OutcomeAssignment> out{OutcomeAssignment{}};
  for (const auto& op : bound.circuit.operations()) {
    std::vector<OutcomeAssignment> next;
    next.reserve(out.size() * op.outcomes.size());
    for (const auto& base : out)
      for (const auto& tok : op.outcomes) {
        OutcomeAssignment a = base;
        a[op.id] = tok;
        next.push_back(std::move(a));
      }
    out = std::move(next);
  }
  return out;
}

double evaluate_circuit(const BoundCircuit& bound,
                        const OutcomeAssignment& assignment,
                        const Theory& theory,
                        const std::optional<Foliation>& foliation) {
  require_valid_closed_bound(bound);
  const OutcomeAssignment full = complete_assignment(bound, assignment);
  const Foliation fol =
      foliation ? *foliation : complete_foliation(bound.circuit);
  const auto layers = layer_decomposition(bound.circuit, fol);

  std::map<std::string, TransferMatrix> effective;
  for (const auto& op : bound.circuit.operations())
    effective.emplace(op.id, effective_matrix(bound, theory, op.id,
                                               full.at(op.id)));

  Frontier f{TransferMatrix{SystemType{}, SystemType{},
                            Eigen::MatrixXd::Identity(1, 1), "start"},
             {}};
  for (const auto& layer : layers) {
    // Align with the canonical hypersurface order first, as the layer
    // records it.
    if (!layer.before.empty()) {
      TransferMatrix align = wire_permutation_matrix(
          theory, wire_types(bound.circuit, f.order),
          permutation_between(f.order, layer.before));
      f.cur = sequential_compose(align, f.cur);
      f.order = layer.before;
    }
    std::vector<TransferMatrix*> zs;
    std::vector<std::vector<std::string>> ins, outs;
    for (const auto& id : layer.ops) {
      zs.push_back(&effective.at(id));
      ins.push_back(bound.circuit.input_wires(id));
      outs.push_back(bound.circuit.output_wires(id));
    }
    apply_step(f, bound.circuit, theory, zs, ins, outs);
  }
  if (!f.order.empty())
    throw Error("evaluate: wires left unconsumed after the final layer");

  const double p = f.cur.z(0, 0);
  if (p < -kProbTol || p > 1.0 + kProbTol)
    throw Error("evaluate: probability " + std::to_string(p) +
                " outside [0,1]; some bound matrix is not a valid "
                "transformation");
  return p;
}

TransferMatrix fragment_transfer_matrix(
    const BoundCircuit& bound, const std::vector<std::string>& input_wires,
    const std::vector<std::string>& output_wires,
    const OutcomeAssignment& assignment, const Theory& theory) {
  const Circuit& c = bound.circuit;
  auto report = c.validate();
  if (!report.ok())
    throw Error("fragment: invalid circuit: " +
                report.violations.front().message);
  if (!is_synchronous(c, input_wires))
    throw Error("fragment: input wires are not a synchronous set");
  if (!is_synchronous(c, output_wires))
    throw Error("fragment: output wires are not a synchronous set");
  {
    std::set<std::string> dup(input_wires.begin(), input_wires.end());
    if (dup.size() != input_wires.size())
      throw Error("fragment: repeated input wire");
    dup = std::set<std::string>(output_wires.begin(), output_wires.end());
    if (dup.size() != output_wires.size())
      throw Error("fragment: repeated output wire");
  }

  const std::set<std::string> in_set(input_wires.begin(), input_wires.end());
  const std::set<std::string> out_set(output_wires.begin(),
                                      output_wires.end());

  // Membership: operations forward of the inputs and backward of the
  // outputs (everything, when the respective list is empty).
  std::map<std::string, std::vector<std::string>> succ, pred;
  for (const auto& op : c.operations()) {
    succ[op.id];
    pred[op.id];
  }
  for (const auto& w : c.wires()) {
    succ[w.source.op].push_back(w.target.op);
    pred[w.target.op].push_back(w.source.op);
  }
  auto closure = [](const std::map<std::string, std::vector<std::string>>& adj,
                    std::vector<std::string> seeds) {
    std::set<std::string> seen(seeds.begin(), seeds.end());
    while (!seeds.empty()) {
      auto cur = std::move(seeds.back());
      seeds.pop_back();
      for (const auto& n : adj.at(cur))
        if (seen.insert(n).second) seeds.push_back(n);
    }
    return seen;
  };

  std::set<std::string> member;
  if (input_wires.empty() && output_wires.empty()) {
    for (const auto& op : c.operations()) member.insert(op.id);
  } else {
    std::set<std::string> fwd, bwd;
    if (!input_wires.empty()) {
      std::vector<std::string> seeds;
      for (const auto& w : input_wires) seeds.push_back(c.wire(w).target.op);
      fwd = closure(succ, std::move(seeds));
    }
    if (!output_wires.empty()) {
      std::vector<std::string> seeds;
      for (const auto& w : output_wires) seeds.push_back(c.wire(w).source.op);
      bwd = closure(pred, std::move(seeds));
    }
    if (input_wires.empty())
      member = bwd;
    else if (output_wires.empty())
      member = fwd;
    else
      for (const auto& id : fwd)
        if (bwd.count(id)) member.insert(id);
  }
  // Lone wires appear on both boundary lists and have no member endpoints.
  for (const auto& w : input_wires) {
    if (out_set.count(w)) {
      member.erase(c.wire(w).target.op);
      continue;
    }
    if (!member.count(c.wire(w).target.op))
      throw Error("fragment: input wire '" + w + "' does not enter the "
                  "fragment");
    if (member.count(c.wire(w).source.op))
      throw Error("fragment: input wire '" + w + "' starts inside the "
                  "fragment");
  }
  for (const auto& w : output_wires) {
    if (in_set.count(w)) continue;
    if (!member.count(c.wire(w).source.op))
      throw Error("fragment: output wire '" + w + "' does not leave the "
                  "fragment");
    if (member.count(c.wire(w).target.op))
      throw Error("fragment: output wire '" + w + "' ends inside the "
                  "fragment");
  }
  // Every member wire must be internal or declared on the boundary.
  for (const auto& id : member) {
    for (const auto& w : c.input_wires(id)) {
      if (in_set.count(w)) continue;
      if (!member.count(c.wire(w).source.op))
        throw Error("fragment: undeclared wire '" + w +
                    "' crosses into operation '" + id + "'");
    }
    for (const auto& w : c.output_wires(id)) {
      if (out_set.count(w)) continue;
      if (!member.count(c.wire(w).target.op))
        throw Error("fragment: undeclared wire '" + w +
                    "' leaves operation '" + id + "'");
    }
  }

  OutcomeAssignment full;
  for (const auto& id : member) {
    const auto& op = c.operation(id);
    auto it = assignment.find(id);
    if (it != assignment.end()) {
      full[id] = it->second;
    } else if (op.outcomes.size() == 1) {
      full[id] = op.outcomes.front();
    } else {
      throw Error("fragment: no outcome assigned for operation '" + id + "'");
    }
  }

  std::map<std::string, TransferMatrix> effective;
  for (const auto& id : member)
    effective.emplace(id, effective_matrix(bound, theory, id, full.at(id)));

  Frontier f{theory.identity(wire_types(c, input_wires)), input_wires};
  f.cur.label = "fragment";

  std::set<std::string> pending(member);
  while (!pending.empty()) {
    std::string chosen;
    for (const auto& id : pending) {
      const auto ins = c.input_wires(id);
      const std::set<std::string> frontier_set(f.order.begin(), f.order.end());
      if (std::all_of(ins.begin(), ins.end(), [&](const auto& w) {
            return frontier_set.count(w) > 0;
          })) {
        chosen = id;
        break;
      }
    }
    if (chosen.empty())
      throw Error("fragment: boundary lists do not delimit a fragment");
    pending.erase(chosen);
    std::vector<TransferMatrix*> zs{&effective.at(chosen)};
    apply_step(f, c, theory, zs, {c.input_wires(chosen)},
               {c.output_wires(chosen)});
  }

  TransferMatrix align = wire_permutation_matrix(
      theory, wire_types(c, f.order),
      permutation_between(f.order, output_wires));
  TransferMatrix out = sequential_compose(align, f.cur);
  out.label = "fragment";
  return out;
}

double trace_probability(const StateVector& state, const Theory& theory) {
  const EffectVector tr = theory.trace_effect(state.system);
  if (tr.r.size() != state.p.size())
    throw Error("trace_probability: state length mismatch");
  return tr.r * state.p;
}

StateVector normalize(const StateVector& state, const Theory& theory) {
  const double tr = trace_probability(state, theory);
  if (tr <= 1e-12)
    throw Error("normalize: degenerate input (null state has no "
                "normalization)");
  return StateVector{state.system, state.p / tr};
}

StateVector reduced_state(const StateVector& state, int keep,
                          const Theory& theory) {
  const int n = static_cast<int>(state.system.size());
  if (keep < 0 || keep >= n)
    throw Error("reduced_state: factor index out of range");
  TransferMatrix contraction{SystemType{}, SystemType{},
                             Eigen::MatrixXd::Identity(1, 1), "reduce"};
  for (int j = 0; j < n; ++j) {
    const SystemType factor{state.system.factors[j]};
    TransferMatrix part =
        j == keep ? theory.identity(factor)
                  : TransferMatrix::from_effect(theory.trace_effect(factor));
    contraction = tensor_compose(contraction, part, theory);
  }
  return StateVector{SystemType{state.system.factors[keep]},
                     contraction.z * state.p};
}

const char* to_string(StateClass c) {
  switch (c) {
    case StateClass::null_state: return "null";
    case StateClass::homogeneous_pure: return "homogeneous-pure";
    case StateClass::homogeneous_subnormalized:
      return "homogeneous-subnormalized";
    case StateClass::heterogeneous: return "heterogeneous";
  }
  return "?";
}

StateClass classify_state(const StateVector& state, const Theory& theory) {
  if (state.p.cwiseAbs().maxCoeff() <= 1e-12) return StateClass::null_state;
  if (!theory.is_homogeneous(state)) return StateClass::heterogeneous;
  const double tr = trace_probability(state, theory);
  return std::abs(tr - 1.0) <= kProbTol ? StateClass::homogeneous_pure
                                        : StateClass::homogeneous_subnormalized;
}

}  // namespace gptc
