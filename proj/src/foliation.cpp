#include "gptc/foliation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "gptc/error.hpp"

namespace gptc {

WireSet make_wire_set(std::vector<std::string> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

namespace {

void require_wires(const Circuit& c, const std::vector<std::string>& ids) {
  for (const auto& id : ids)
    if (!c.has_wire(id)) throw Error("unknown wire id: " + id);
}

std::map<std::string, std::vector<std::string>> op_successors(
    const Circuit& c) {
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& op : c.operations()) succ[op.id];
  for (const auto& w : c.wires()) succ[w.source.op].push_back(w.target.op);
  return succ;
}

// Forward closure over operations, including the seeds themselves.
std::set<std::string> forward_closure(
    const std::map<std::string, std::vector<std::string>>& succ,
    const std::vector<std::string>& seeds) {
  std::set<std::string> seen(seeds.begin(), seeds.end());
  std::vector<std::string> stack(seeds.begin(), seeds.end());
  while (!stack.empty()) {
    std::string cur = std::move(stack.back());
    stack.pop_back();
    auto it = succ.find(cur);
    if (it == succ.end()) continue;
    for (const auto& nxt : it->second)
      if (seen.insert(nxt).second) stack.push_back(nxt);
  }
  return seen;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Undirected components of the operation graph once the wires of `cut` are
// removed, plus which components touch the cut from the past (contain a
// source) or future (contain a target) side.
struct CutComponents {
  std::map<std::string, int> comp_of_op;  // op id -> component root
  std::set<int> past_forced;
  std::set<int> future_forced;
};

CutComponents cut_components(const Circuit& c,
                             const std::set<std::string>& cut) {
  std::map<std::string, int> index;
  int n = 0;
  for (const auto& op : c.operations()) index[op.id] = n++;
  UnionFind uf(static_cast<std::size_t>(n));
  for (const auto& w : c.wires()) {
    if (cut.count(w.id)) continue;
    if (index.count(w.source.op) && index.count(w.target.op))
      uf.unite(index[w.source.op], index[w.target.op]);
  }
  CutComponents out;
  for (const auto& [id, i] : index) out.comp_of_op[id] = uf.find(i);
  for (const auto& wid : cut) {
    const Wire& w = c.wire(wid);
    out.past_forced.insert(uf.find(index.at(w.source.op)));
    out.future_forced.insert(uf.find(index.at(w.target.op)));
  }
  return out;
}

std::set<std::string> past_part(const Circuit& c, const WireSet& h) {
  auto cc = cut_components(c, std::set<std::string>(h.begin(), h.end()));
  std::set<std::string> ops;
  for (const auto& [id, comp] : cc.comp_of_op)
    if (cc.past_forced.count(comp)) ops.insert(id);
  return ops;
}

std::set<std::string> future_part(const Circuit& c, const WireSet& h) {
  auto cc = cut_components(c, std::set<std::string>(h.begin(), h.end()));
  std::set<std::string> ops;
  for (const auto& [id, comp] : cc.comp_of_op)
    if (cc.future_forced.count(comp)) ops.insert(id);
  return ops;
}

// Operation classes by wiring. Closed ports carry no wires, so an operation
// whose only output is closed counts as an effect, etc.
struct OpClasses {
  std::vector<std::string> preps;    // no input wires, some output wires
  std::vector<std::string> middles;  // input and output wires
  std::vector<std::string> effects;  // input wires only
  std::vector<std::string> scalars;  // no wires at all
};

OpClasses classify_ops(const Circuit& c) {
  OpClasses out;
  for (const auto& op : c.operations()) {
    const bool has_in = !c.input_wires(op.id).empty();
    const bool has_out = !c.output_wires(op.id).empty();
    if (has_in && has_out)
      out.middles.push_back(op.id);
    else if (has_in)
      out.effects.push_back(op.id);
    else if (has_out)
      out.preps.push_back(op.id);
    else
      out.scalars.push_back(op.id);
  }
  return out;
}

void require_valid_closed(const Circuit& c, const char* where) {
  auto report = c.validate();
  if (!report.ok())
    throw Error(std::string(where) + ": invalid circuit: " +
                report.violations.front().message);
  if (!c.is_closed())
    throw Error(std::string(where) + ": circuit has unattached open ports");
}

// Shared driver for complete_foliation and the enumerator: advance one ready
// operation per step, exploring choices in ascending id order.
void foliate_rec(const Circuit& c, std::set<std::string>& frontier,
                 std::set<std::string>& pending,
                 std::vector<WireSet>& prefix, std::vector<Foliation>& out,
                 std::size_t limit) {
  if (out.size() >= limit) return;
  if (pending.empty()) {
    out.push_back(Foliation{prefix});
    return;
  }
  std::vector<std::string> ready;
  for (const auto& id : pending) {
    const auto ins = c.input_wires(id);
    if (std::all_of(ins.begin(), ins.end(), [&frontier](const auto& w) {
          return frontier.count(w) > 0;
        }))
      ready.push_back(id);
  }
  if (ready.empty())
    throw Error("complete_foliation: no ready operation (circuit not valid?)");
  for (const auto& id : ready) {
    const auto ins = c.input_wires(id);
    const auto outs = c.output_wires(id);
    for (const auto& w : ins) frontier.erase(w);
    for (const auto& w : outs) frontier.insert(w);
    pending.erase(id);
    prefix.push_back(WireSet(frontier.begin(), frontier.end()));

    foliate_rec(c, frontier, pending, prefix, out, limit);

    prefix.pop_back();
    pending.insert(id);
    for (const auto& w : outs) frontier.erase(w);
    for (const auto& w : ins) frontier.insert(w);
    if (out.size() >= limit) return;
  }
}

std::vector<Foliation> foliate(const Circuit& c, std::size_t limit) {
  require_valid_closed(c, "complete_foliation");
  if (c.wires().empty()) return {Foliation{}};
  OpClasses classes = classify_ops(c);

  std::set<std::string> frontier;
  for (const auto& id : classes.preps)
    for (const auto& w : c.output_wires(id)) frontier.insert(w);
  std::set<std::string> pending(classes.middles.begin(),
                                classes.middles.end());
  std::vector<WireSet> prefix{WireSet(frontier.begin(), frontier.end())};
  std::vector<Foliation> out;
  foliate_rec(c, frontier, pending, prefix, out, limit);
  return out;
}

}  // namespace

bool is_synchronous(const Circuit& circuit,
                    const std::vector<std::string>& wire_ids) {
  require_wires(circuit, wire_ids);
  if (wire_ids.size() < 2) return true;
  auto succ = op_successors(circuit);
  for (const auto& w1 : wire_ids) {
    auto fwd = forward_closure(succ, {circuit.wire(w1).target.op});
    for (const auto& w2 : wire_ids) {
      if (w1 == w2) continue;
      if (fwd.count(circuit.wire(w2).source.op)) return false;
    }
  }
  return true;
}

bool is_hypersurface(const Circuit& circuit,
                     const std::vector<std::string>& wire_ids) {
  require_wires(circuit, wire_ids);
  if (!is_synchronous(circuit, wire_ids)) return false;
  auto cc =
      cut_components(circuit, std::set<std::string>(wire_ids.begin(),
                                                    wire_ids.end()));
  for (int comp : cc.past_forced)
    if (cc.future_forced.count(comp)) return false;
  return true;
}

bool is_after(const Circuit& circuit, const WireSet& h1, const WireSet& h2) {
  if (!is_hypersurface(circuit, h1))
    throw Error("is_after: first wire set is not a hypersurface");
  if (!is_hypersurface(circuit, h2))
    throw Error("is_after: second wire set is not a hypersurface");
  auto past = past_part(circuit, h1);
  auto future = future_part(circuit, h2);
  for (const auto& id : past)
    if (future.count(id)) return false;
  return true;
}

Foliation complete_foliation(const Circuit& circuit) {
  return foliate(circuit, 1).front();
}

std::vector<Foliation> enumerate_complete_foliations(const Circuit& circuit,
                                                     std::size_t limit) {
  if (limit == 0) return {};
  auto all = foliate(circuit, limit);
  // Distinct orderings give distinct frontier sequences, but keep the
  // result canonical and deduplicated regardless.
  std::vector<Foliation> out;
  std::set<std::vector<WireSet>> seen;
  for (auto& f : all)
    if (seen.insert(f.hypersurfaces).second) out.push_back(std::move(f));
  return out;
}

std::vector<Layer> layer_decomposition(const Circuit& circuit,
                                       const Foliation& foliation) {
  require_valid_closed(circuit, "layer_decomposition");
  const auto& hs = foliation.hypersurfaces;
  const std::size_t T = hs.size();

  OpClasses classes = classify_ops(circuit);

  if (T == 0) {
    if (!circuit.wires().empty())
      throw Error("layer_decomposition: empty foliation on a wired circuit");
    Layer initial;
    initial.ops = classes.scalars;
    std::sort(initial.ops.begin(), initial.ops.end());
    return {initial};
  }

  std::set<std::string> covered;
  for (const auto& h : hs) {
    require_wires(circuit, h);
    if (!is_hypersurface(circuit, h))
      throw Error("layer_decomposition: set is not a hypersurface");
    covered.insert(h.begin(), h.end());
  }
  for (std::size_t i = 0; i < T; ++i)
    for (std::size_t j = i + 1; j < T; ++j)
      if (!is_after(circuit, hs[i], hs[j]))
        throw Error("layer_decomposition: hypersurfaces out of order");
  if (covered.size() != circuit.wires().size())
    throw Error("layer_decomposition: foliation does not cover every wire");

  std::vector<std::set<std::string>> hset(T);
  for (std::size_t t = 0; t < T; ++t)
    hset[t] = std::set<std::string>(hs[t].begin(), hs[t].end());

  auto subset_of = [](const std::vector<std::string>& ws,
                      const std::set<std::string>& h) {
    return std::all_of(ws.begin(), ws.end(),
                       [&h](const auto& w) { return h.count(w) > 0; });
  };

  // Slot s=0 feeds H_1; slot s in [1, T-1] maps H_s to H_{s+1}; slot T
  // consumes H_T. Preparations take the earliest admissible slot, effects
  // the latest, middles have a unique one.
  std::vector<std::vector<std::string>> slot_ops(T + 1);
  auto assign = [&](const std::string& id, std::size_t s) {
    slot_ops[s].push_back(id);
  };

  for (const auto& id : classes.scalars) assign(id, 0);
  for (const auto& id : classes.preps) {
    const auto outs = circuit.output_wires(id);
    bool placed = false;
    for (std::size_t s = 0; s < T && !placed; ++s)
      if (subset_of(outs, hset[s])) {
        assign(id, s);
        placed = true;
      }
    if (!placed)
      throw Error("layer_decomposition: no slot for preparation '" + id + "'");
  }
  for (const auto& id : classes.effects) {
    const auto ins = circuit.input_wires(id);
    bool placed = false;
    for (std::size_t s = T; s >= 1 && !placed; --s)
      if (subset_of(ins, hset[s - 1])) {
        assign(id, s);
        placed = true;
      }
    if (!placed)
      throw Error("layer_decomposition: no slot for effect '" + id + "'");
  }
  for (const auto& id : classes.middles) {
    const auto ins = circuit.input_wires(id);
    const auto outs = circuit.output_wires(id);
    bool placed = false;
    for (std::size_t s = 1; s + 1 <= T && !placed; ++s)
      if (subset_of(ins, hset[s - 1]) && subset_of(outs, hset[s])) {
        assign(id, s);
        placed = true;
      }
    if (!placed)
      throw Error("layer_decomposition: no slot for operation '" + id + "'");
  }

  // Wire-flow validation and layer assembly.
  std::vector<Layer> layers(T + 1);
  for (std::size_t s = 0; s <= T; ++s) {
    Layer& L = layers[s];
    L.ops = slot_ops[s];
    std::sort(L.ops.begin(), L.ops.end());

    std::set<std::string> consumed, produced;
    for (const auto& id : L.ops) {
      for (const auto& w : circuit.input_wires(id)) {
        L.input_order.push_back(w);
        consumed.insert(w);
      }
      for (const auto& w : circuit.output_wires(id)) {
        L.output_order.push_back(w);
        produced.insert(w);
      }
    }
    if (s > 0) {
      L.before = hs[s - 1];
      for (const auto& w : hs[s - 1])
        if (!consumed.count(w)) L.passthrough.push_back(w);
    }
    if (s < T) L.after = hs[s];
    L.input_order.insert(L.input_order.end(), L.passthrough.begin(),
                         L.passthrough.end());
    L.output_order.insert(L.output_order.end(), L.passthrough.begin(),
                          L.passthrough.end());

    // The outgoing hypersurface must be exactly what this layer delivers.
    std::set<std::string> delivered(produced);
    delivered.insert(L.passthrough.begin(), L.passthrough.end());
    if (s < T) {
      if (delivered != hset[s])
        throw Error(
            "layer_decomposition: foliation is not evaluable in layer order "
            "(hypersurface " +
            std::to_string(s + 1) + " mismatch)");
    } else if (!delivered.empty()) {
      throw Error(
          "layer_decomposition: wires left over after the final layer");
    }
    if (s > 0)
      for (const auto& w : consumed)
        if (!hset[s - 1].count(w))
          throw Error("layer_decomposition: operation consumes a wire not in "
                      "its bounding hypersurface");
  }

  std::size_t assigned = 0;
  for (const auto& ops : slot_ops) assigned += ops.size();
  if (assigned != circuit.operations().size())
    throw Error("layer_decomposition: some operations were not layered");

  return layers;
}

}  // namespace gptc
