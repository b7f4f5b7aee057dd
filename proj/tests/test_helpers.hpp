#pragma once

// Small circuits shared across the test files.

#include <Eigen/Dense>

#include "gptc/circuit.hpp"
#include "gptc/classical.hpp"
#include "gptc/engine.hpp"
#include "gptc/quantum.hpp"

namespace gptc::testing {

// prep -> effect over one wire of the given type.
inline Circuit single_wire_circuit(const std::string& type = "s") {
  CircuitBuilder b;
  b.add_operation("p", {}, {type});
  b.add_operation("e", {type}, {});
  b.add_wire("w1", PortRef{"p", 0}, PortRef{"e", 0});
  return b.build();
}

// prep -> g1 -> g2 -> effect (a chain with two inner operations).
inline Circuit chain_circuit(const std::string& type = "s") {
  CircuitBuilder b;
  b.add_operation("a_prep", {}, {type});
  b.add_operation("b_gate", {type}, {type});
  b.add_operation("c_gate", {type}, {type});
  b.add_operation("d_eff", {type}, {});
  b.add_wire("w1", PortRef{"a_prep", 0}, PortRef{"b_gate", 0});
  b.add_wire("w2", PortRef{"b_gate", 0}, PortRef{"c_gate", 0});
  b.add_wire("w3", PortRef{"c_gate", 0}, PortRef{"d_eff", 0});
  return b.build();
}

// One preparation feeding two parallel single-wire gates A and B, joined by
// a final two-wire effect. Wires: wa (prep->A), wb (prep->B), wc (A->eff),
// wd (B->eff).
inline Circuit two_strand_circuit(const std::string& type = "s") {
  CircuitBuilder b;
  b.add_operation("prep", {}, {type, type});
  b.add_operation("A", {type}, {type});
  b.add_operation("B", {type}, {type});
  b.add_operation("eff", {type, type}, {});
  b.add_wire("wa", PortRef{"prep", 0}, PortRef{"A", 0});
  b.add_wire("wb", PortRef{"prep", 1}, PortRef{"B", 0});
  b.add_wire("wc", PortRef{"A", 0}, PortRef{"eff", 0});
  b.add_wire("wd", PortRef{"B", 0}, PortRef{"eff", 1});
  return b.build();
}

// Six operations wired like the worked layered-evaluation example:
//   alpha -> (wa, wb), beta -> (wc, wd), delta: wa -> wf,
//   gamma: (wb, wc) -> we, epsilon: (we, wd) -> wg, zeta: (wf, wg) -> .
inline Circuit layered_example_circuit(const std::string& type = "s") {
  CircuitBuilder b;
  b.add_operation("alpha", {}, {type, type});
  b.add_operation("beta", {}, {type, type});
  b.add_operation("delta", {type}, {type});
  b.add_operation("gamma", {type, type}, {type});
  b.add_operation("epsilon", {type, type}, {type});
  b.add_operation("zeta", {type, type}, {});
  b.add_wire("wa", PortRef{"alpha", 0}, PortRef{"delta", 0});
  b.add_wire("wb", PortRef{"alpha", 1}, PortRef{"gamma", 0});
  b.add_wire("wc", PortRef{"beta", 0}, PortRef{"gamma", 1});
  b.add_wire("wd", PortRef{"beta", 1}, PortRef{"epsilon", 1});
  b.add_wire("we", PortRef{"gamma", 0}, PortRef{"epsilon", 0});
  b.add_wire("wf", PortRef{"delta", 0}, PortRef{"zeta", 0});
  b.add_wire("wg", PortRef{"epsilon", 0}, PortRef{"zeta", 1});
  return b.build();
}

// Classical coin: prep (p, 1-p) into a two-outcome readout effect.
inline BoundCircuit classical_coin(const ClassicalTheory& theory, double p) {
  BoundCircuit bound;
  const SystemType c2{"c2"};
  Eigen::VectorXd prep(2);
  prep << p, 1.0 - p;
  bound.matrices["p"] = {TransferMatrix{SystemType{}, c2, prep, "prep"}};
  Eigen::RowVectorXd r0(2), r1(2);
  r0 << 1, 0;
  r1 << 0, 1;
  bound.matrices["e"] = {TransferMatrix{c2, SystemType{}, r0, "e=0"},
                         TransferMatrix{c2, SystemType{}, r1, "e=1"}};
  CircuitBuilder b;
  b.add_operation("p", {}, {"c2"});
  b.add_operation("e", {"c2"}, {}, 2);
  b.add_wire("w1", PortRef{"p", 0}, PortRef{"e", 0});
  bound.circuit = b.build();
  return bound;
}

// Bell pair measured in the computational basis on both wires.
inline BoundCircuit bell_circuit(const QuantumTheory& theory) {
  BoundCircuit bound;
  CircuitBuilder b;
  b.add_operation("P", {}, {"q2", "q2"});
  b.add_operation("M1", {"q2"}, {}, 2);
  b.add_operation("M2", {"q2"}, {}, 2);
  b.add_wire("w1", PortRef{"P", 0}, PortRef{"M1", 0});
  b.add_wire("w2", PortRef{"P", 1}, PortRef{"M2", 0});
  bound.circuit = b.build();

  const SystemType q{"q2"}, qq{"q2", "q2"};
  Eigen::VectorXcd bell(4);
  bell << 1, 0, 0, 1;
  bell /= std::sqrt(2.0);
  CPMap prep = CPMap::from_kraus(1, 4, {Eigen::MatrixXcd(bell)});
  bound.cp_maps["P"] = {prep};
  bound.matrices["P"] = {quantum_transfer_matrix(
      prep, theory.system_basis(SystemType{}), theory.system_basis(qq),
      SystemType{}, qq, "bell")};

  std::vector<TransferMatrix> zs;
  std::vector<CPMap> maps;
  for (int k = 0; k < 2; ++k) {
    Eigen::MatrixXcd bra = Eigen::MatrixXcd::Zero(1, 2);
    bra(0, k) = 1.0;
    maps.push_back(CPMap::from_kraus(2, 1, {bra}));
    zs.push_back(quantum_transfer_matrix(
        maps.back(), theory.system_basis(q), theory.system_basis(SystemType{}),
        q, SystemType{}, "m=" + std::to_string(k)));
  }
  bound.matrices["M1"] = zs;
  bound.matrices["M2"] = zs;
  bound.cp_maps["M1"] = maps;
  bound.cp_maps["M2"] = maps;
  return bound;
}

}  // namespace gptc::testing
