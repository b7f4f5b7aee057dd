#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gptc/circuit.hpp"

namespace gptc {

/// A set of wire ids in canonical (sorted, unique) order. A hypersurface is
/// a synchronous wire set that splits the circuit into a past part and a
/// future part connected only through the set itself.
using WireSet = std::vector<std::string>;

WireSet make_wire_set(std::vector<std::string> ids);

/// Ordered hypersurfaces, each after its predecessor. Complete when every
/// wire of the circuit appears in at least one hypersurface.
struct Foliation {
  std::vector<WireSet> hypersurfaces;

  bool operator==(const Foliation&) const = default;
};

/// One evaluation step between consecutive hypersurfaces. `before`/`after`
/// are the bounding hypersurfaces in canonical order (empty for the initial
/// and final layer). `input_order`/`output_order` give the factor order the
/// step matrix is built in: member-operation ports first (operations sorted
/// by id, ports in declaration order), then pass-through wires.
struct Layer {
  std::vector<std::string> ops;
  std::vector<std::string> passthrough;
  WireSet before;
  WireSet after;
  std::vector<std::string> input_order;
  std::vector<std::string> output_order;
};

/// True iff no trace-forward path connects one wire of the set to another.
bool is_synchronous(const Circuit& circuit,
                    const std::vector<std::string>& wire_ids);

/// True iff the set is synchronous and cutting it leaves no other connection
/// between the induced past and future parts. Components untouched by the
/// cut are unconstrained and do not spoil the partition (so the empty set is
/// a hypersurface).
bool is_hypersurface(const Circuit& circuit,
                     const std::vector<std::string>& wire_ids);

/// True iff h2 is after h1: the past part of h1 and the future part of h2
/// share no operation. Requires both sets to be hypersurfaces.
bool is_after(const Circuit& circuit, const WireSet& h1, const WireSet& h2);

/// Constructive complete foliation: start from all initial wires, then
/// repeatedly advance the ready operation with the lowest id. A circuit with
/// no wires yields the empty foliation.
Foliation complete_foliation(const Circuit& circuit);

/// Up to `limit` distinct complete foliations, by backtracking over the
/// choice of ready operation at every step. The first result equals
/// complete_foliation(circuit).
std::vector<Foliation> enumerate_complete_foliations(const Circuit& circuit,
                                                     std::size_t limit);

/// Splits a closed circuit along a complete foliation into layers:
/// an initial layer (operations with no input wires), one layer per
/// consecutive hypersurface pair, and a final layer. Throws Error when the
/// foliation is not a complete foliation of this circuit or cannot be
/// evaluated in layer order.
std::vector<Layer> layer_decomposition(const Circuit& circuit,
                                       const Foliation& foliation);

}  // namespace gptc
