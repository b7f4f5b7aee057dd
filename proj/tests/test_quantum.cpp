#include <doctest.h>

#include <nlohmann/json.hpp>
#include <random>
#include <unsupported/Eigen/KroneckerProduct>

#include "gptc/error.hpp"
#include "gptc/generator.hpp"
#include "gptc/quantum.hpp"

using namespace gptc;

namespace {

QuantumTheory theory_q2() {
  QuantumTheory t;
  t.declare_type("q2", 2);
  return t;
}

}  // namespace

TEST_CASE("one-dimensional fiducial basis is the scalar") {
  auto b = QuantumFiducialBasis::canonical(1);
  REQUIRE(b.ops.size() == 1);
  CHECK(b.ops[0](0, 0) == std::complex<double>(1.0, 0.0));
  CHECK(b.gram(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("qubit basis: four operators with the known Gram matrix") {
  auto b = QuantumFiducialBasis::canonical(2);
  REQUIRE(b.ops.size() == 4);
  Eigen::MatrixXd expected(4, 4);
  expected << 1.0, 0.0, 0.5, 0.5,  //
      0.0, 1.0, 0.5, 0.5,          //
      0.5, 0.5, 1.0, 0.5,          //
      0.5, 0.5, 0.5, 1.0;
  CHECK((b.gram - expected).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((b.gram * b.gram_inv)
            .isApprox(Eigen::MatrixXd::Identity(4, 4), 1e-12));
  // golden condition number of the qubit Gram matrix
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b.gram);
  const double cond =
      svd.singularValues()(0) / svd.singularValues()(3);
  CHECK(cond == doctest::Approx(10.403882032022073).epsilon(1e-9));
}

TEST_CASE("dimension-three basis spans nine dimensions") {
  auto b = QuantumFiducialBasis::canonical(3);
  REQUIRE(b.ops.size() == 9);
  Eigen::MatrixXd coords(9, 9);
  for (int i = 0; i < 9; ++i) {
    // coordinates over the E_ij expansion, stacked re/im
    Eigen::VectorXd v(9);
    int k = 0;
    for (int r = 0; r < 3; ++r) v[k++] = b.ops[i](r, r).real();
    for (int r = 0; r < 3; ++r)
      for (int c = r + 1; c < 3; ++c) {
        v[k++] = b.ops[i](r, c).real();
        v[k++] = b.ops[i](r, c).imag();
      }
    coords.col(i) = v;
  }
  CHECK(Eigen::FullPivLU<Eigen::MatrixXd>(coords).rank() == 9);
}

TEST_CASE("embedding round-trips random density matrices") {
  std::mt19937_64 rng(4);
  for (int n : {2, 3, 4}) {
    auto b = QuantumFiducialBasis::canonical(n);
    for (int trial = 0; trial < 10; ++trial) {
      auto rho = random_density_matrix(n, rng);
      CHECK((b.unembed(b.embed(rho)) - rho).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("identity channel embeds as the identity matrix") {
  auto t = theory_q2();
  auto zs = t.make_gate(GateSpec{"id", {}}, SystemType{"q2"}, SystemType{"q2"});
  CHECK(zs[0].z.isApprox(Eigen::MatrixXd::Identity(4, 4), 1e-12));
}

TEST_CASE("trace effect equals the density-matrix trace") {
  auto t = theory_q2();
  const auto r = t.trace_effect(SystemType{"q2"});
  // golden row for the canonical qubit basis
  Eigen::RowVectorXd expected(4);
  expected << 1, 1, 0, 0;
  CHECK((r.r - expected).cwiseAbs().maxCoeff() < 1e-12);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    auto rho = random_density_matrix(2, rng);
    rho *= 0.8;  // subnormalized too
    auto p = t.embed_state(rho, SystemType{"q2"});
    const double lhs = (r.r * p.p).value();
    CHECK(lhs == doctest::Approx(rho.trace().real()).epsilon(1e-12));
  }
}

TEST_CASE("depolarizing channel round-trips through its transfer matrix") {
  auto t = theory_q2();
  auto maps = t.make_gate_maps(GateSpec{"depolarize", {nlohmann::json(0.5)}},
                               SystemType{"q2"}, SystemType{"q2"});
  auto zs = t.make_gate(GateSpec{"depolarize", {nlohmann::json(0.5)}},
                        SystemType{"q2"}, SystemType{"q2"});
  REQUIRE(zs.size() == 1);
  CHECK(zs[0].z.rows() == 4);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto rho = random_density_matrix(2, rng);
    auto direct = maps[0].apply(rho);
    auto via_z =
        t.unembed_state(StateVector{SystemType{"q2"},
                                    zs[0].z * t.embed_state(rho, SystemType{"q2"}).p});
    CHECK((direct - via_z).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("transpose map is positive but rejected as not completely positive") {
  auto t = theory_q2();
  const auto& b = t.basis(2);
  // transfer matrix of the transpose, built directly from the definition
  Eigen::MatrixXd m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      m(i, j) = (b.ops[i] * b.ops[j].transpose()).trace().real();
  TransferMatrix z{SystemType{"q2"}, SystemType{"q2"}, m * b.gram_inv,
                   "transpose"};
  auto report = t.validate_transfer(z);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations.front().message.find("not completely positive") !=
        std::string::npos);
}

TEST_CASE("trace-increasing maps are rejected") {
  auto t = theory_q2();
  TransferMatrix z{SystemType{"q2"}, SystemType{"q2"},
                   2.0 * Eigen::MatrixXd::Identity(4, 4), "double"};
  auto report = t.validate_transfer(z);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations.front().message.find("trace") != std::string::npos);
}

TEST_CASE("choi reconstruction inverts the embedding") {
  auto t = theory_q2();
  std::mt19937_64 rng(13);
  const auto& b = t.basis(2);
  for (int trial = 0; trial < 10; ++trial) {
    auto u = random_unitary(2, rng);
    CPMap map = CPMap::from_kraus(2, 2, {u});
    auto z = quantum_transfer_matrix(map, b, b, SystemType{"q2"},
                                     SystemType{"q2"});
    CPMap back = choi_from_transfer(z, b, b);
    CHECK((back.choi - map.choi).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("measurement gates cover destructive and kept variants") {
  auto t = theory_q2();
  auto kept = t.make_gate(GateSpec{"measure_z", {}}, SystemType{"q2"},
                          SystemType{"q2"});
  REQUIRE(kept.size() == 2);
  auto merged = kept[0].z + kept[1].z;
  // measuring and forgetting is the full dephasing channel, not the identity
  CHECK_FALSE(merged.isApprox(Eigen::MatrixXd::Identity(4, 4)));

  auto destructive =
      t.make_gate(GateSpec{"measure_z", {}}, SystemType{"q2"}, SystemType{});
  REQUIRE(destructive.size() == 2);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    auto rho = random_density_matrix(2, rng);
    auto p = t.embed_state(rho, SystemType{"q2"});
    CHECK((destructive[0].z * p.p).value() ==
          doctest::Approx(rho(0, 0).real()).epsilon(1e-10));
    CHECK((destructive[1].z * p.p).value() ==
          doctest::Approx(rho(1, 1).real()).epsilon(1e-10));
  }
}

TEST_CASE("povm elements must stay below the identity") {
  auto t = theory_q2();
  auto ok = t.make_gate(
      GateSpec{"povm", {nlohmann::json::parse(
                           "[[[0.5,0],[0,0.5]], [[0.5,0],[0,0.5]]]")}},
      SystemType{"q2"}, SystemType{});
  CHECK(ok.size() == 2);
  CHECK_THROWS_AS(
      t.make_gate(GateSpec{"povm", {nlohmann::json::parse(
                                       "[[[1.5,0],[0,1.0]]]")}},
                  SystemType{"q2"}, SystemType{}),
      Error);
}

TEST_CASE("prep_ket validates length and norm") {
  auto t = theory_q2();
  auto ok = t.make_gate(
      GateSpec{"prep_ket", {nlohmann::json::parse("[[0.6,0],[0.8,0]]")}},
      SystemType{}, SystemType{"q2"});
  CHECK(ok.size() == 1);
  CHECK_THROWS_AS(
      t.make_gate(GateSpec{"prep_ket", {nlohmann::json::parse("[1,0,0]")}},
                  SystemType{}, SystemType{"q2"}),
      Error);
  CHECK_THROWS_AS(
      t.make_gate(GateSpec{"prep_ket", {nlohmann::json::parse("[2,0]")}},
                  SystemType{}, SystemType{"q2"}),
      Error);
}

TEST_CASE("cnot embeds as a 16x16 transfer matrix acting correctly") {
  QuantumTheory t;
  t.declare_type("q2", 2);
  const SystemType qq{"q2", "q2"};
  auto zs = t.make_gate(GateSpec{"cnot", {}}, qq, qq);
  REQUIRE(zs.size() == 1);
  CHECK(zs[0].z.rows() == 16);
  // |10> -> |11>
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
  rho(2, 2) = 1.0;
  auto p = t.embed_state(rho, qq);
  auto out = t.unembed_state(StateVector{qq, zs[0].z * p.p});
  CHECK(out(3, 3).real() == doctest::Approx(1.0));
}

TEST_CASE("quantum homogeneity tracks density-matrix rank") {
  auto t = theory_q2();
  Eigen::MatrixXcd pure = Eigen::MatrixXcd::Zero(2, 2);
  pure(0, 0) = 1.0;
  CHECK(t.is_homogeneous(t.embed_state(pure, SystemType{"q2"})));
  CHECK(t.is_homogeneous(t.embed_state(0.3 * pure, SystemType{"q2"})));
  Eigen::MatrixXcd mixed = 0.5 * Eigen::MatrixXcd::Identity(2, 2);
  CHECK_FALSE(t.is_homogeneous(t.embed_state(mixed, SystemType{"q2"})));
}

TEST_CASE("CPMap validation catches broken Choi matrices") {
  CPMap valid = CPMap::identity(2);
  CHECK(valid.validate().ok());

  CPMap swap_map;  // Choi of the transpose: the swap, not PSD
  swap_map.in_dim = 2;
  swap_map.out_dim = 2;
  swap_map.choi = Eigen::MatrixXcd::Zero(4, 4);
  swap_map.choi(0, 0) = swap_map.choi(3, 3) = 1.0;
  swap_map.choi(1, 2) = swap_map.choi(2, 1) = 1.0;
  CHECK_FALSE(swap_map.validate().ok());
}

TEST_CASE("kraus decomposition reproduces the channel") {
  std::mt19937_64 rng(23);
  auto rho = random_density_matrix(2, rng);
  QuantumTheory t;
  t.declare_type("q2", 2);
  auto depol = t.make_gate_maps(GateSpec{"depolarize", {nlohmann::json(0.3)}},
                                SystemType{"q2"}, SystemType{"q2"});
  Eigen::MatrixXcd direct = depol[0].apply(rho);
  Eigen::MatrixXcd via_kraus = Eigen::MatrixXcd::Zero(2, 2);
  for (const auto& k : depol[0].kraus_operators())
    via_kraus += k * rho * k.adjoint();
  CHECK((direct - via_kraus).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("coarse-grained outcomes equal the summed channel") {
  QuantumTheory t;
  t.declare_type("q2", 2);
  const SystemType q{"q2"};
  auto maps = t.make_gate_maps(GateSpec{"measure_z", {}}, q, q);
  auto zs = t.make_gate(GateSpec{"measure_z", {}}, q, q);
  // reference: sum the Choi matrices, embed once
  CPMap summed;
  summed.in_dim = 2;
  summed.out_dim = 2;
  summed.choi = maps[0].choi + maps[1].choi;
  auto expected = quantum_transfer_matrix(summed, t.basis(2), t.basis(2), q, q);
  auto merged = coarse_grain(zs);
  CHECK((merged.z - expected.z).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("theory identities pass their own validity predicate") {
  QuantumTheory q;
  q.declare_type("q2", 2);
  q.declare_type("q3", 3);
  CHECK(q.validate_transfer(q.identity(SystemType{"q2"})).ok());
  CHECK(q.validate_transfer(q.identity(SystemType{"q2", "q3"})).ok());
}
