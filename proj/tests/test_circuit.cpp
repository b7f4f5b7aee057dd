#include <doctest.h>

#include "gptc/circuit.hpp"
#include "gptc/error.hpp"
#include "test_helpers.hpp"

using namespace gptc;

TEST_CASE("smallest valid circuit has an empty report") {
  Circuit c = testing::single_wire_circuit();
  auto report = validate(c);
  CHECK(report.ok());
  CHECK(c.is_closed());
}

TEST_CASE("validate is pure: same input, same report") {
  Circuit c = testing::two_strand_circuit();
  auto r1 = validate(c);
  auto r2 = validate(c);
  CHECK(r1.violations.size() == r2.violations.size());
  CHECK(r1.ok());
}

TEST_CASE("a forward loop is reported with a witness") {
  CircuitBuilder b;
  b.add_operation("A", {"s"}, {"s"});
  b.add_operation("B", {"s"}, {"s"});
  b.add_wire("w1", PortRef{"A", 0}, PortRef{"B", 0});
  b.add_wire("w2", PortRef{"B", 0}, PortRef{"A", 0});
  Circuit c = b.build();
  auto report = validate(c);
  REQUIRE_FALSE(report.ok());
  bool cycle_found = false;
  for (const auto& v : report.violations)
    if (v.kind == ViolationKind::directed_cycle) {
      cycle_found = true;
      CHECK(v.cycle_witness.size() >= 2);
    }
  CHECK(cycle_found);
}

TEST_CASE("wire types must match at both ends") {
  CircuitBuilder b;
  b.add_operation("p", {}, {"q2"});
  b.add_operation("e", {"bit"}, {});
  b.add_wire("w1", PortRef{"p", 0}, PortRef{"e", 0});
  auto report = validate(b.build());
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].kind == ViolationKind::type_mismatch);
}

TEST_CASE("ports carry at most one wire") {
  CircuitBuilder b;
  b.add_operation("p", {}, {"s"});
  b.add_operation("e1", {"s"}, {});
  b.add_operation("e2", {"s"}, {});
  b.add_wire("w1", PortRef{"p", 0}, PortRef{"e1", 0});
  b.add_wire("w2", PortRef{"p", 0}, PortRef{"e2", 0});
  auto report = validate(b.build());
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations[0].kind == ViolationKind::port_double_use);
}

TEST_CASE("closed ports reject wires") {
  CircuitBuilder b;
  b.add_operation("p", {}, {"s"});
  b.add_operation("e", {"s"}, {});
  b.close_output("p", 0);
  b.add_wire("w1", PortRef{"p", 0}, PortRef{"e", 0});
  auto report = validate(b.build());
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations[0].kind == ViolationKind::wire_on_closed_port);
}

TEST_CASE("dangling references and bad ports are violations, not crashes") {
  CircuitBuilder b;
  b.add_operation("p", {}, {"s"});
  Wire w;
  w.id = "w1";
  w.source = {"p", 3};
  w.target = {"ghost", 0};
  b.add_wire(w);
  auto report = validate(b.build());
  CHECK_FALSE(report.ok());
}

TEST_CASE("a fragment with open ports is not closed") {
  CircuitBuilder b;
  b.add_operation("g", {"s"}, {"s"});
  Circuit c = b.build();
  CHECK(validate(c).ok());
  CHECK_FALSE(c.is_closed());
}

TEST_CASE("closing a port closes the circuit") {
  CircuitBuilder b;
  b.add_operation("p", {}, {"s"});
  b.close_output("p", 0);
  Circuit c = b.build();
  CHECK(validate(c).ok());
  CHECK(c.is_closed());
  CHECK(c.output_wires("p").empty());
}

TEST_CASE("disjoint union renames both parts") {
  Circuit u = disjoint_union(testing::single_wire_circuit(),
                             testing::single_wire_circuit(), "1:", "2:");
  CHECK(u.operations().size() == 4);
  CHECK(u.wires().size() == 2);
  CHECK(validate(u).ok());
  CHECK(u.has_operation("1:p"));
  CHECK(u.has_operation("2:e"));
}

TEST_CASE("unknown ids throw") {
  Circuit c = testing::single_wire_circuit();
  CHECK_THROWS_AS(c.operation("nope"), Error);
  CHECK_THROWS_AS(c.wire("nope"), Error);
}
