#include <doctest.h>

#include <random>
#include <unsupported/Eigen/KroneckerProduct>

#include "gptc/error.hpp"
#include "gptc/generator.hpp"
#include "gptc/oracles.hpp"
#include "test_helpers.hpp"

using namespace gptc;

TEST_CASE("norm-one preparation into the trace effect gives one") {
  ClassicalTheory t;
  t.declare_type("c2", 2);
  BoundCircuit bound;
  bound.circuit = testing::single_wire_circuit("c2");
  Eigen::VectorXd prep(2);
  prep << 0.4, 0.6;
  bound.matrices["p"] = {
      TransferMatrix{SystemType{}, SystemType{"c2"}, prep, "prep"}};
  bound.matrices["e"] = {
      TransferMatrix::from_effect(t.trace_effect(SystemType{"c2"}))};
  CHECK(evaluate_circuit(bound, {}, t) == doctest::Approx(1.0));
}

TEST_CASE("classical chain with outcome selection") {
  // prep (0.3, 0.7) -> identity gate -> effect selecting state 0
  ClassicalTheory t;
  t.declare_type("c2", 2);
  BoundCircuit bound;
  CircuitBuilder b;
  b.add_operation("p", {}, {"c2"});
  b.add_operation("g", {"c2"}, {"c2"});
  b.add_operation("e", {"c2"}, {}, 2);
  b.add_wire("w1", PortRef{"p", 0}, PortRef{"g", 0});
  b.add_wire("w2", PortRef{"g", 0}, PortRef{"e", 0});
  bound.circuit = b.build();
  Eigen::VectorXd prep(2);
  prep << 0.3, 0.7;
  const SystemType c2{"c2"};
  bound.matrices["p"] = {TransferMatrix{SystemType{}, c2, prep, "prep"}};
  bound.matrices["g"] = {t.identity(c2)};
  Eigen::RowVectorXd r0(2), r1(2);
  r0 << 1, 0;
  r1 << 0, 1;
  bound.matrices["e"] = {TransferMatrix{c2, SystemType{}, r0, "0"},
                         TransferMatrix{c2, SystemType{}, r1, "1"}};

  CHECK(evaluate_circuit(bound, {{"e", "0"}}, t) == doctest::Approx(0.3));
  CHECK(evaluate_circuit(bound, {{"e", "1"}}, t) == doctest::Approx(0.7));
  // matches the exhaustive enumeration oracle exactly
  CHECK(oracle::classical_enumeration_probability(bound, t, {{"e", "0"}}) ==
        doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("bell pair measured in the computational basis") {
  QuantumTheory t;
  t.declare_type("q2", 2);
  auto bound = testing::bell_circuit(t);
  const OutcomeAssignment both0{{"M1", "0"}, {"M2", "0"}};
  const OutcomeAssignment mixed{{"M1", "0"}, {"M2", "1"}};
  CHECK(evaluate_circuit(bound, both0, t) == doctest::Approx(0.5));
  CHECK(evaluate_circuit(bound, mixed, t) ==
        doctest::Approx(0.0).epsilon(1e-10));
  // density-matrix reference agrees
  CHECK(oracle::density_matrix_probability(bound, t, both0) ==
        doctest::Approx(0.5));
  // total over the four outcomes is one
  double total = 0.0;
  for (const auto& a : all_assignments(bound))
    total += evaluate_circuit(bound, a, t);
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("explicit foliations agree on the two-strand circuit") {
  QuantumTheory t;
  t.declare_type("q2", 2);
  BoundCircuit bound;
  bound.circuit = testing::two_strand_circuit("q2");
  const SystemType q{"q2"}, qq{"q2", "q2"};
  std::mt19937_64 rng(31);
  auto prep_rho = Eigen::kroneckerProduct(random_density_matrix(2, rng),
                                          random_density_matrix(2, rng))
                      .eval();
  bound.matrices["prep"] = {TransferMatrix::from_state(
      t.embed_state(prep_rho, qq), "prep")};
  auto u_a = CPMap::from_kraus(2, 2, {random_unitary(2, rng)});
  auto u_b = CPMap::from_kraus(2, 2, {random_unitary(2, rng)});
  bound.matrices["A"] = {
      quantum_transfer_matrix(u_a, t.basis(2), t.basis(2), q, q, "A")};
  bound.matrices["B"] = {
      quantum_transfer_matrix(u_b, t.basis(2), t.basis(2), q, q, "B")};
  bound.matrices["eff"] = {
      TransferMatrix::from_effect(t.trace_effect(qq), "eff")};

  auto foliations = enumerate_complete_foliations(bound.circuit, 10);
  REQUIRE(foliations.size() == 2);
  const double p0 = evaluate_circuit(bound, {}, t, foliations[0]);
  const double p1 = evaluate_circuit(bound, {}, t, foliations[1]);
  CHECK(p0 == doctest::Approx(p1).epsilon(1e-12));
  CHECK(p0 == doctest::Approx(evaluate_circuit(bound, {}, t)));
}

TEST_CASE("closed output ports contract with the trace effect") {
  // preparation with one wired and one closed output
  QuantumTheory t;
  t.declare_type("q2", 2);
  BoundCircuit bound;
  CircuitBuilder b;
  b.add_operation("P", {}, {"q2", "q2"});
  b.add_operation("M", {"q2"}, {}, 2);
  b.close_output("P", 1);
  b.add_wire("w1", PortRef{"P", 0}, PortRef{"M", 0});
  bound.circuit = b.build();

  const SystemType q{"q2"}, qq{"q2", "q2"};
  Eigen::VectorXcd bell(4);
  bell << 1, 0, 0, 1;
  bell /= std::sqrt(2.0);
  CPMap prep = CPMap::from_kraus(1, 4, {Eigen::MatrixXcd(bell)});
  bound.cp_maps["P"] = {prep};
  bound.matrices["P"] = {
      quantum_transfer_matrix(prep, t.system_basis(SystemType{}),
                              t.system_basis(qq), SystemType{}, qq, "bell")};
  std::vector<TransferMatrix> zs;
  std::vector<CPMap> maps;
  for (int k = 0; k < 2; ++k) {
    Eigen::MatrixXcd bra = Eigen::MatrixXcd::Zero(1, 2);
    bra(0, k) = 1.0;
    maps.push_back(CPMap::from_kraus(2, 1, {bra}));
    zs.push_back(quantum_transfer_matrix(maps.back(), t.system_basis(q),
                                         t.system_basis(SystemType{}), q,
                                         SystemType{}, "m"));
  }
  bound.matrices["M"] = zs;
  bound.cp_maps["M"] = maps;

  // discarding half a maximally entangled pair leaves the uniform mixture
  CHECK(evaluate_circuit(bound, {{"M", "0"}}, t) == doctest::Approx(0.5));
  CHECK(oracle::density_matrix_probability(bound, t, {{"M", "0"}}) ==
        doctest::Approx(0.5));
}

TEST_CASE("closed input ports insert the canonical closure state") {
  ClassicalTheory t;
  t.declare_type("c2", 2);
  BoundCircuit bound;
  CircuitBuilder b;
  b.add_operation("g", {"c2"}, {"c2"});  // gate used as a preparation
  b.add_operation("e", {"c2"}, {}, 2);
  b.close_input("g", 0);
  b.add_wire("w1", PortRef{"g", 0}, PortRef{"e", 0});
  bound.circuit = b.build();
  const SystemType c2{"c2"};
  Eigen::MatrixXd flip(2, 2);
  flip << 0.2, 0.7, 0.8, 0.3;
  bound.matrices["g"] = {classical_transfer_matrix(flip, c2, c2, "g")};
  Eigen::RowVectorXd r0(2), r1(2);
  r0 << 1, 0;
  r1 << 0, 1;
  bound.matrices["e"] = {TransferMatrix{c2, SystemType{}, r0, "0"},
                         TransferMatrix{c2, SystemType{}, r1, "1"}};
  // closure state is the first point state, so column 0 of the gate acts
  CHECK(evaluate_circuit(bound, {{"e", "0"}}, t) == doctest::Approx(0.2));
  CHECK(evaluate_circuit(bound, {{"e", "1"}}, t) == doctest::Approx(0.8));
  CHECK(oracle::classical_enumeration_probability(bound, t, {{"e", "1"}}) ==
        doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("probability is invariant under wire renaming") {
  std::mt19937_64 rng(37);
  GeneratorOptions opts;
  opts.max_operations = 7;
  for (int i = 0; i < 8; ++i) {
    auto gen = random_circuit(rng, i % 2 ? "quantum" : "classical", opts);
    const double before = evaluate_circuit(
        gen.bound, all_assignments(gen.bound).front(), *gen.theory);

    // reverse the lexicographic order of every wire id
    BoundCircuit renamed;
    renamed.matrices = gen.bound.matrices;
    renamed.cp_maps = gen.bound.cp_maps;
    CircuitBuilder b;
    for (const auto& op : gen.bound.circuit.operations()) b.add_operation(op);
    for (Wire w : gen.bound.circuit.wires()) {
      w.id = "zz_" + std::string(1, 'z' - (w.id.back() - '0')) + w.id;
      b.add_wire(std::move(w));
    }
    renamed.circuit = b.build();
    const double after = evaluate_circuit(
        renamed, all_assignments(renamed).front(), *gen.theory);
    CHECK(before == doctest::Approx(after).epsilon(1e-12));
  }
}

TEST_CASE("empty circuit evaluates to one") {
  BoundCircuit bound;
  ClassicalTheory t;
  CHECK(evaluate_circuit(bound, {}, t) == doctest::Approx(1.0));
}

TEST_CASE("range violations are reported as invalid matrices") {
  ClassicalTheory t;
  t.declare_type("c2", 2);
  BoundCircuit bound;
  bound.circuit = testing::single_wire_circuit("c2");
  Eigen::VectorXd prep(2);
  prep << 0.9, 0.9;  // not a state
  bound.matrices["p"] = {
      TransferMatrix{SystemType{}, SystemType{"c2"}, prep, "bad"}};
  Eigen::RowVectorXd ones = Eigen::RowVectorXd::Ones(2);
  bound.matrices["e"] = {
      TransferMatrix{SystemType{"c2"}, SystemType{}, ones, "tr"}};
  CHECK_THROWS_AS(evaluate_circuit(bound, {}, t), Error);
}

// ---- fragments ----

TEST_CASE("a lone wire is the identity fragment") {
  ClassicalTheory t;
  t.declare_type("c3", 3);
  BoundCircuit bound;
  bound.circuit = testing::single_wire_circuit("c3");
  bound.matrices["p"] = {TransferMatrix::from_state(
      StateVector{SystemType{"c3"}, Eigen::VectorXd::Zero(3)})};
  bound.matrices["e"] = {
      TransferMatrix::from_effect(t.trace_effect(SystemType{"c3"}))};
  auto z = fragment_transfer_matrix(bound, {"w1"}, {"w1"}, {}, t);
  CHECK(z.z.isApprox(Eigen::MatrixXd::Identity(3, 3)));
}

TEST_CASE("a preparation-only fragment is a state column") {
  ClassicalTheory t;
  t.declare_type("c2", 2);
  BoundCircuit bound;
  bound.circuit = testing::single_wire_circuit("c2");
  Eigen::VectorXd prep(2);
  prep << 0.25, 0.5;
  bound.matrices["p"] = {
      TransferMatrix{SystemType{}, SystemType{"c2"}, prep, "prep"}};
  bound.matrices["e"] = {
      TransferMatrix::from_effect(t.trace_effect(SystemType{"c2"}))};
  auto z = fragment_transfer_matrix(bound, {}, {"w1"}, {}, t);
  CHECK(z.input.is_null());
  CHECK(z.z.col(0).isApprox(prep));
}

TEST_CASE("sequential gates compose like the composed channel") {
  QuantumTheory t;
  t.declare_type("q2", 2);
  BoundCircuit bound;
  bound.circuit = testing::chain_circuit("q2");
  std::mt19937_64 rng(41);
  auto f = CPMap::from_kraus(2, 2, {random_unitary(2, rng)});
  auto g = CPMap::from_kraus(2, 2, {random_unitary(2, rng)});
  const SystemType q{"q2"};
  bound.matrices["a_prep"] = {TransferMatrix::from_state(
      t.embed_state(random_density_matrix(2, rng), q))};
  bound.matrices["b_gate"] = {
      quantum_transfer_matrix(f, t.basis(2), t.basis(2), q, q, "f")};
  bound.matrices["c_gate"] = {
      quantum_transfer_matrix(g, t.basis(2), t.basis(2), q, q, "g")};
  bound.matrices["d_eff"] = {
      TransferMatrix::from_effect(t.trace_effect(q))};

  auto frag = fragment_transfer_matrix(bound, {"w1"}, {"w3"}, {}, t);
  // reference: compose the channels in Choi form, then embed once
  auto composed = g.compose_after(f);
  auto expected =
      quantum_transfer_matrix(composed, t.basis(2), t.basis(2), q, q);
  CHECK((frag.z - expected.z).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("fragments validate their boundary lists") {
  ClassicalTheory t;
  t.declare_type("c2", 2);
  BoundCircuit bound;
  bound.circuit = testing::chain_circuit("c2");
  const SystemType c2{"c2"};
  bound.matrices["a_prep"] = {TransferMatrix::from_state(t.closure_state("c2"))};
  bound.matrices["b_gate"] = {t.identity(c2)};
  bound.matrices["c_gate"] = {t.identity(c2)};
  bound.matrices["d_eff"] = {
      TransferMatrix::from_effect(t.trace_effect(c2))};
  // w1 and w2 are causally ordered: not synchronous
  CHECK_THROWS_AS(fragment_transfer_matrix(bound, {"w1", "w2"}, {"w3"}, {}, t),
                  Error);
  // an undeclared crossing wire
  CHECK_THROWS_AS(fragment_transfer_matrix(bound, {}, {"w3", "w1"}, {}, t),
                  Error);
}

// ---- state operations ----

TEST_CASE("trace probability and normalization") {
  ClassicalTheory t;
  t.declare_type("c2", 2);
  const SystemType c2{"c2"};
  Eigen::VectorXd p(2);
  p << 0.3, 0.2;
  StateVector s{c2, p};
  CHECK(trace_probability(s, t) == doctest::Approx(0.5));
  auto normed = normalize(s, t);
  CHECK(normed.p[0] == doctest::Approx(0.6));
  CHECK(normed.p[1] == doctest::Approx(0.4));

  StateVector null{c2, Eigen::VectorXd::Zero(2)};
  CHECK(trace_probability(null, t) == doctest::Approx(0.0));
  CHECK_THROWS_AS(normalize(null, t), Error);
}

TEST_CASE("quantum trace probability equals the matrix trace") {
  QuantumTheory t;
  t.declare_type("q3", 3);
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXcd rho = 0.7 * random_density_matrix(3, rng);
    auto s = t.embed_state(rho, SystemType{"q3"});
    CHECK(trace_probability(s, t) ==
          doctest::Approx(rho.trace().real()).epsilon(1e-12));
  }
}

TEST_CASE("reduced state of a product with a norm-one partner") {
  ClassicalTheory t;
  t.declare_type("c2", 2);
  t.declare_type("c3", 3);
  std::mt19937_64 rng(47);
  Eigen::VectorXd p = 0.6 * random_simplex_point(2, rng);
  Eigen::VectorXd q = random_simplex_point(3, rng);  // norm one
  StateVector joint{SystemType{"c2", "c3"},
                    Eigen::kroneckerProduct(p, q).eval()};
  auto reduced = reduced_state(joint, 0, t);
  CHECK(reduced.system == SystemType{"c2"});
  CHECK((reduced.p - p).cwiseAbs().maxCoeff() < 1e-12);
  auto reduced_b = reduced_state(joint, 1, t);
  CHECK((reduced_b.p - trace_probability({SystemType{"c2"}, p}, t) * q)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  CHECK_THROWS_AS(reduced_state(joint, 2, t), Error);
}

TEST_CASE("reduced bell state is maximally mixed") {
  QuantumTheory t;
  t.declare_type("q2", 2);
  const SystemType qq{"q2", "q2"};
  Eigen::VectorXcd bell(4);
  bell << 1, 0, 0, 1;
  bell /= std::sqrt(2.0);
  auto joint = t.embed_state(bell * bell.adjoint(), qq);
  auto reduced = reduced_state(joint, 0, t);
  // reference: partial trace computed directly
  Eigen::MatrixXcd rho = bell * bell.adjoint();
  Eigen::MatrixXcd pt = Eigen::MatrixXcd::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) pt(i, j) += rho(i * 2 + k, j * 2 + k);
  auto expected = t.embed_state(pt, SystemType{"q2"});
  CHECK((reduced.p - expected.p).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(t.unembed_state(reduced)(0, 0).real() == doctest::Approx(0.5));
}

TEST_CASE("state classification") {
  ClassicalTheory c;
  c.declare_type("c2", 2);
  const SystemType c2{"c2"};
  Eigen::VectorXd sub(2), mixed(2), null(2), point(2);
  sub << 0.0, 0.4;
  mixed << 0.5, 0.5;
  null << 0.0, 0.0;
  point << 1.0, 0.0;
  CHECK(classify_state({c2, sub}, c) == StateClass::homogeneous_subnormalized);
  CHECK(classify_state({c2, mixed}, c) == StateClass::heterogeneous);
  CHECK(classify_state({c2, null}, c) == StateClass::null_state);
  CHECK(classify_state({c2, point}, c) == StateClass::homogeneous_pure);

  QuantumTheory q;
  q.declare_type("q2", 2);
  Eigen::MatrixXcd ket0 = Eigen::MatrixXcd::Zero(2, 2);
  ket0(0, 0) = 1.0;
  CHECK(classify_state(q.embed_state(ket0, SystemType{"q2"}), q) ==
        StateClass::homogeneous_pure);
  CHECK(classify_state(q.embed_state(0.5 * Eigen::MatrixXcd::Identity(2, 2),
                                     SystemType{"q2"}),
                       q) == StateClass::heterogeneous);
}

TEST_CASE("assignments must cover multi-outcome operations") {
  ClassicalTheory t;
  t.declare_type("c2", 2);
  auto bound = testing::classical_coin(t, 0.5);
  CHECK_THROWS_AS(evaluate_circuit(bound, {}, t), Error);
  CHECK_THROWS_AS(evaluate_circuit(bound, {{"e", "5"}}, t), Error);
  CHECK_THROWS_AS(evaluate_circuit(bound, {{"ghost", "0"}, {"e", "0"}}, t),
                  Error);
  CHECK(evaluate_circuit(bound, {{"e", "0"}}, t) == doctest::Approx(0.5));
}

TEST_CASE("the whole circuit is the scalar fragment") {
  QuantumTheory t;
  t.declare_type("q2", 2);
  auto bound = testing::bell_circuit(t);
  auto z = fragment_transfer_matrix(bound, {}, {},
                                    {{"M1", "0"}, {"M2", "0"}}, t);
  CHECK(z.input.is_null());
  CHECK(z.output.is_null());
  CHECK(z.z(0, 0) == doctest::Approx(0.5));
}
