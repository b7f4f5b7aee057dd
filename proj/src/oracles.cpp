#include "gptc/oracles.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unsupported/Eigen/KroneckerProduct>

#include "gptc/error.hpp"

namespace gptc::oracle {

namespace {

// ---- classical enumeration ----

struct OpView {
  const Eigen::MatrixXd* z;            // full-signature matrix
  std::vector<int> in_wire_slots;      // open input ports -> wire slot
  std::vector<int> out_wire_slots;     // open output ports -> wire slot
  std::vector<int> in_dims, out_dims;  // all ports, in port order
  std::vector<bool> in_closed, out_closed;
};

// Matrix entry for a configuration of the op's open ports, with closed
// outputs summed out and closed inputs pinned to the first state.
double op_factor(const OpView& v, const std::vector<int>& wire_value) {
  int in_index = 0;
  {
    std::size_t open = 0;
    for (std::size_t p = 0; p < v.in_dims.size(); ++p) {
      const int value =
          v.in_closed[p] ? 0 : wire_value[v.in_wire_slots[open++]];
      in_index = in_index * v.in_dims[p] + value;
    }
  }
  std::vector<std::size_t> closed_out;
  for (std::size_t p = 0; p < v.out_dims.size(); ++p)
    if (v.out_closed[p]) closed_out.push_back(p);

  double total = 0.0;
  std::vector<int> closed_value(closed_out.size(), 0);
  while (true) {
    int out_index = 0;
    std::size_t open = 0, closed = 0;
    for (std::size_t p = 0; p < v.out_dims.size(); ++p) {
      const int value = v.out_closed[p]
                            ? closed_value[closed++]
                            : wire_value[v.out_wire_slots[open++]];
      out_index = out_index * v.out_dims[p] + value;
    }
    total += (*v.z)(out_index, in_index);
    int i = static_cast<int>(closed_out.size()) - 1;
    for (; i >= 0; --i) {
      if (++closed_value[i] < v.out_dims[closed_out[i]]) break;
      closed_value[i] = 0;
    }
    if (i < 0) break;
  }
  return total;
}

// ---- density-matrix helpers (kept local to this reference path) ----

struct Factor {
  std::string wire;  // empty for closed-port placeholders
  int dim = 1;
};

Eigen::MatrixXcd factor_permutation(const std::vector<Factor>& factors,
                                    const std::vector<int>& perm) {
  int total = 1;
  for (const auto& f : factors) total *= f.dim;
  std::vector<int> out_dims(perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j)
    out_dims[j] = factors[perm[j]].dim;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(total, total);
  std::vector<int> index(factors.size(), 0);
  for (int col = 0; col < total; ++col) {
    int row = 0;
    for (std::size_t j = 0; j < perm.size(); ++j)
      row = row * out_dims[j] + index[perm[j]];
    u(row, col) = 1.0;
    for (int i = static_cast<int>(factors.size()) - 1; i >= 0; --i) {
      if (++index[i] < factors[i].dim) break;
      index[i] = 0;
    }
  }
  return u;
}

struct DensityState {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(1, 1);
  std::vector<Factor> factors;

  void permute(const std::vector<int>& perm) {
    Eigen::MatrixXcd u = factor_permutation(factors, perm);
    rho = (u * rho * u.adjoint()).eval();
    std::vector<Factor> next;
    for (int p : perm) next.push_back(factors[p]);
    factors = std::move(next);
  }

  // Moves factor `from` to position `to`, shifting the rest.
  void rotate(std::size_t from, std::size_t to) {
    if (from == to) return;
    std::vector<int> perm;
    for (std::size_t j = 0; j < factors.size(); ++j)
      if (j != from) perm.push_back(static_cast<int>(j));
    perm.insert(perm.begin() + to, static_cast<int>(from));
    permute(perm);
  }

  void tensor_front(const Eigen::MatrixXcd& block, Factor f) {
    rho = Eigen::kroneckerProduct(block, rho).eval();
    factors.insert(factors.begin(), std::move(f));
  }

  void trace_out_front() {
    const int lead = factors.front().dim;
    const int rest = static_cast<int>(rho.rows()) / lead;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rest, rest);
    for (int k = 0; k < lead; ++k)
      out += rho.block(k * rest, k * rest, rest, rest);
    rho = std::move(out);
    factors.erase(factors.begin());
  }
};

}  // namespace

double classical_enumeration_probability(const BoundCircuit& bound,
                                         const ClassicalTheory& theory,
                                         const OutcomeAssignment& assignment) {
  const Circuit& c = bound.circuit;
  const OutcomeAssignment full = complete_assignment(bound, assignment);

  std::vector<int> wire_dims;
  std::map<std::string, int> slot;
  for (const auto& w : c.wires()) {
    slot[w.id] = static_cast<int>(wire_dims.size());
    wire_dims.push_back(theory.distinguishable_count(w.type));
  }

  std::vector<OpView> views;
  for (const auto& op : c.operations()) {
    OpView v;
    v.z = &bound.matrix_for(op.id, full.at(op.id)).z;
    for (const auto& port : op.inputs) {
      v.in_dims.push_back(theory.distinguishable_count(port.type));
      v.in_closed.push_back(port.closed);
    }
    for (const auto& port : op.outputs) {
      v.out_dims.push_back(theory.distinguishable_count(port.type));
      v.out_closed.push_back(port.closed);
    }
    for (const auto& w : c.input_wires(op.id))
      v.in_wire_slots.push_back(slot.at(w));
    for (const auto& w : c.output_wires(op.id))
      v.out_wire_slots.push_back(slot.at(w));
    views.push_back(std::move(v));
  }

  double total = 0.0;
  std::vector<int> value(wire_dims.size(), 0);
  while (true) {
    double term = 1.0;
    for (const auto& v : views) {
      term *= op_factor(v, value);
      if (term == 0.0) break;
    }
    total += term;
    int i = static_cast<int>(value.size()) - 1;
    for (; i >= 0; --i) {
      if (++value[i] < wire_dims[i]) break;
      value[i] = 0;
    }
    if (i < 0) break;
  }
  return total;
}

double density_matrix_probability(const BoundCircuit& bound,
                                  const QuantumTheory& theory,
                                  const OutcomeAssignment& assignment) {
  const Circuit& c = bound.circuit;
  const OutcomeAssignment full = complete_assignment(bound, assignment);

  std::set<std::string> pending;
  for (const auto& op : c.operations()) pending.insert(op.id);

  DensityState state;

  while (!pending.empty()) {
    // Next executable operation, by ascending id.
    std::string chosen;
    for (const auto& id : pending) {
      const auto ins = c.input_wires(id);
      std::set<std::string> live_set;
      for (const auto& f : state.factors) live_set.insert(f.wire);
      if (std::all_of(ins.begin(), ins.end(), [&](const auto& w) {
            return live_set.count(w) > 0;
          })) {
        chosen = id;
        break;
      }
    }
    if (chosen.empty())
      throw Error("density oracle: circuit is not executable");
    pending.erase(chosen);

    const OperationNode& op = c.operation(chosen);
    auto maps_it = bound.cp_maps.find(chosen);
    if (maps_it == bound.cp_maps.end())
      throw Error("density oracle: no CP map bound for '" + chosen + "'");
    const auto pos =
        std::find(op.outcomes.begin(), op.outcomes.end(), full.at(chosen));
    const CPMap& map = maps_it->second.at(
        static_cast<std::size_t>(std::distance(op.outcomes.begin(), pos)));

    // Assemble the op's full input block at the front: wires in port order,
    // |0><0| for closed ports.
    const auto ins = c.input_wires(chosen);
    std::size_t open_seen = 0;
    for (std::size_t p = 0; p < op.inputs.size(); ++p) {
      if (op.inputs[p].closed) {
        const int d = theory.distinguishable_count(op.inputs[p].type);
        Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(d, d);
        zero(0, 0) = 1.0;
        state.tensor_front(zero, Factor{"", d});
        state.rotate(0, p);
      } else {
        const std::string& w = ins[open_seen++];
        std::size_t at = 0;
        while (state.factors[at].wire != w) ++at;
        state.rotate(at, p);
      }
    }

    // Apply (map x identity) in Kraus form.
    const int rest_dim = static_cast<int>(state.rho.rows()) / map.in_dim;
    Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(map.out_dim * rest_dim,
                                                   map.out_dim * rest_dim);
    for (const auto& k : map.kraus_operators()) {
      Eigen::MatrixXcd ext = Eigen::kroneckerProduct(
          k, Eigen::MatrixXcd::Identity(rest_dim, rest_dim));
      next += ext * state.rho * ext.adjoint();
    }
    state.rho = std::move(next);

    // Replace the leading input factors by the op's full output ports.
    std::vector<Factor> rest(state.factors.begin() + op.inputs.size(),
                             state.factors.end());
    state.factors.clear();
    const auto outs = c.output_wires(chosen);
    std::size_t open_out = 0;
    for (std::size_t p = 0; p < op.outputs.size(); ++p) {
      const int d = theory.distinguishable_count(op.outputs[p].type);
      if (op.outputs[p].closed)
        state.factors.push_back(Factor{"", d});
      else
        state.factors.push_back(Factor{outs[open_out++], d});
    }
    state.factors.insert(state.factors.end(), rest.begin(), rest.end());

    // Trace out closed output ports.
    for (std::size_t p = state.factors.size(); p-- > 0;) {
      if (p >= op.outputs.size()) continue;
      if (!state.factors[p].wire.empty()) continue;
      state.rotate(p, 0);
      state.trace_out_front();
    }
  }

  if (!state.factors.empty())
    throw Error("density oracle: wires left over");
  return state.rho(0, 0).real();
}

}  // namespace gptc::oracle
