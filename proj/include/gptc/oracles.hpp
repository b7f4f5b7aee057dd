#pragma once

#include "gptc/classical.hpp"
#include "gptc/engine.hpp"
#include "gptc/quantum.hpp"

namespace gptc::oracle {

/// Reference probability by exhaustive enumeration over joint wire
/// configurations: the product over operations of a matrix entry per
/// configuration, summed over all configurations. No foliation, no tensor
/// algebra; exact up to floating-point addition order.
double classical_enumeration_probability(const BoundCircuit& bound,
                                         const ClassicalTheory& theory,
                                         const OutcomeAssignment& assignment);

/// Reference probability by direct density-matrix simulation: operations
/// are applied one at a time (Kraus form of their CP maps) to a global
/// density matrix over the live wires. Requires bound.cp_maps.
double density_matrix_probability(const BoundCircuit& bound,
                                  const QuantumTheory& theory,
                                  const OutcomeAssignment& assignment);

}  // namespace gptc::oracle
