#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gptc/circuit.hpp"
#include "gptc/foliation.hpp"
#include "gptc/quantum.hpp"
#include "gptc/theory.hpp"
#include "gptc/transfer.hpp"

namespace gptc {

/// One outcome token per operation of a circuit.
using OutcomeAssignment = std::map<std::string, std::string>;

/// A circuit together with the per-outcome transfer matrices of every
/// operation (full port signature, closed ports included). For quantum
/// circuits the underlying CP maps are kept as well so the density-matrix
/// reference simulator can run the same circuit through an independent path.
struct BoundCircuit {
  Circuit circuit;
  std::map<std::string, std::vector<TransferMatrix>> matrices;
  std::map<std::string, std::vector<CPMap>> cp_maps;

  const TransferMatrix& matrix_for(const std::string& op_id,
                                   const std::string& outcome) const;
};

/// Fills in the only possible token for single-outcome operations and
/// validates the rest. Throws Error when a multi-outcome operation is left
/// unassigned or a token is not in the operation's outcome space.
OutcomeAssignment complete_assignment(const BoundCircuit& bound,
                                      const OutcomeAssignment& partial);

/// Cartesian product of all outcome spaces.
std::vector<OutcomeAssignment> all_assignments(const BoundCircuit& bound);

/// Probability of a closed, setting-outcome specified circuit: the ordered
/// product of layer matrices along a complete foliation (the constructive
/// one unless an explicit foliation is supplied). Layer matrices tensor the
/// member operations with identities on pass-through wires, conjugated by
/// wire-permutation matrices that align hypersurface order with factor
/// order.
double evaluate_circuit(const BoundCircuit& bound,
                        const OutcomeAssignment& assignment,
                        const Theory& theory,
                        const std::optional<Foliation>& foliation = {});

/// Transfer matrix of a circuit fragment, delimited by ordered synchronous
/// wire lists. Fragment membership is everything forward of the inputs and
/// backward of the outputs; a wire listed on both sides is a lone wire and
/// contributes an identity factor.
TransferMatrix fragment_transfer_matrix(
    const BoundCircuit& bound, const std::vector<std::string>& input_wires,
    const std::vector<std::string>& output_wires,
    const OutcomeAssignment& assignment, const Theory& theory);

double trace_probability(const StateVector& state, const Theory& theory);

/// state / (trace probability); throws Error on the null state.
StateVector normalize(const StateVector& state, const Theory& theory);

/// Identity on the kept factor, trace effect on every other factor.
StateVector reduced_state(const StateVector& state, int keep,
                          const Theory& theory);

enum class StateClass {
  null_state,
  homogeneous_pure,
  homogeneous_subnormalized,
  heterogeneous,
};

const char* to_string(StateClass c);

StateClass classify_state(const StateVector& state, const Theory& theory);

}  // namespace gptc
