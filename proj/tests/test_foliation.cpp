#include <doctest.h>

#include <set>

#include "gptc/error.hpp"
#include "gptc/foliation.hpp"
#include "gptc/generator.hpp"
#include "test_helpers.hpp"

using namespace gptc;

TEST_CASE("wires of disjoint preparations are synchronous") {
  CircuitBuilder b;
  b.add_operation("p1", {}, {"s"});
  b.add_operation("p2", {}, {"s"});
  b.add_operation("e1", {"s"}, {});
  b.add_operation("e2", {"s"}, {});
  b.add_wire("w1", PortRef{"p1", 0}, PortRef{"e1", 0});
  b.add_wire("w2", PortRef{"p2", 0}, PortRef{"e2", 0});
  Circuit c = b.build();
  CHECK(is_synchronous(c, {"w1", "w2"}));
}

TEST_CASE("input and output of one operation are not synchronous") {
  Circuit c = testing::chain_circuit();
  CHECK_FALSE(is_synchronous(c, {"w1", "w2"}));
  CHECK(is_synchronous(c, {"w2"}));
  CHECK_THROWS_AS(is_synchronous(c, {"w9"}), Error);
}

TEST_CASE("middle wires on distinct strands are synchronous") {
  Circuit c = testing::two_strand_circuit();
  CHECK(is_synchronous(c, {"wc", "wb"}));
  CHECK(is_synchronous(c, {"wa", "wd"}));
  CHECK_FALSE(is_synchronous(c, {"wa", "wc"}));
}

TEST_CASE("all initial wires form a hypersurface") {
  Circuit c = testing::two_strand_circuit();
  CHECK(is_hypersurface(c, {"wa", "wb"}));
  CHECK(is_hypersurface(c, {"wc", "wb"}));
  CHECK(is_hypersurface(c, {"wc", "wd"}));
}

TEST_CASE("a cut that misses a parallel strand is no hypersurface") {
  Circuit c = testing::two_strand_circuit();
  CHECK_FALSE(is_hypersurface(c, {"wc"}));
  CHECK_FALSE(is_hypersurface(c, {"wa"}));
}

TEST_CASE("the empty set splits disconnected closed parts") {
  Circuit u = disjoint_union(testing::single_wire_circuit(),
                             testing::single_wire_circuit(), "1:", "2:");
  CHECK(is_hypersurface(u, {}));
  // and single-component cuts are hypersurfaces with the other part loose
  CHECK(is_hypersurface(u, {"1:w1"}));
}

TEST_CASE("hypersurface order by past/future overlap") {
  Circuit c = testing::two_strand_circuit();
  const WireSet h1 = {"wa", "wb"};
  const WireSet h2 = {"wb", "wc"};
  const WireSet h4 = {"wc", "wd"};
  CHECK(is_after(c, h1, h2));
  CHECK(is_after(c, h2, h4));
  CHECK(is_after(c, h1, h4));
  CHECK_FALSE(is_after(c, h2, h1));
  CHECK(is_after(c, h1, h1));  // a hypersurface is after itself
  CHECK_THROWS_AS(is_after(c, {"wa"}, h2), Error);
}

TEST_CASE("single-wire circuit has the one-step foliation") {
  Circuit c = testing::single_wire_circuit();
  Foliation f = complete_foliation(c);
  REQUIRE(f.hypersurfaces.size() == 1);
  CHECK(f.hypersurfaces[0] == WireSet{"w1"});
  CHECK(enumerate_complete_foliations(c, 10).size() == 1);
}

TEST_CASE("two parallel gates give exactly two foliations") {
  Circuit c = testing::two_strand_circuit();
  Foliation f = complete_foliation(c);
  REQUIRE(f.hypersurfaces.size() == 3);
  CHECK(f.hypersurfaces[0] == WireSet{"wa", "wb"});
  CHECK(f.hypersurfaces[1] == WireSet{"wb", "wc"});  // A advanced first
  CHECK(f.hypersurfaces[2] == WireSet{"wc", "wd"});

  auto all = enumerate_complete_foliations(c, 10);
  REQUIRE(all.size() == 2);
  CHECK(all[0] == f);  // enumeration starts with the constructive answer
  CHECK(all[1].hypersurfaces[1] == WireSet{"wa", "wd"});  // B first
}

TEST_CASE("a sequential chain has exactly one foliation") {
  Circuit c = testing::chain_circuit();
  auto all = enumerate_complete_foliations(c, 10);
  REQUIRE(all.size() == 1);
  CHECK(all[0].hypersurfaces.size() == 3);
}

TEST_CASE("foliation of a wireless circuit is empty") {
  CircuitBuilder b;
  b.add_operation("p", {}, {"s"});
  b.close_output("p", 0);
  Circuit c = b.build();
  CHECK(complete_foliation(c).hypersurfaces.empty());
}

TEST_CASE("invalid or open circuits are rejected") {
  CircuitBuilder b;
  b.add_operation("g", {"s"}, {"s"});
  CHECK_THROWS_AS(complete_foliation(b.build()), Error);
}

TEST_CASE("random circuits foliate consistently") {
  std::mt19937_64 rng(5);
  GeneratorOptions opts;
  opts.max_operations = 10;
  for (int i = 0; i < 12; ++i) {
    auto gen = random_circuit(rng, i % 2 ? "quantum" : "classical", opts);
    const Circuit& c = gen.bound.circuit;
    for (const auto& f : enumerate_complete_foliations(c, 40)) {
      std::set<std::string> covered;
      for (const auto& h : f.hypersurfaces) {
        CHECK(is_hypersurface(c, h));
        CHECK(is_synchronous(c, h));
        covered.insert(h.begin(), h.end());
      }
      for (std::size_t t = 0; t + 1 < f.hypersurfaces.size(); ++t)
        CHECK(is_after(c, f.hypersurfaces[t], f.hypersurfaces[t + 1]));
      CHECK(covered.size() == c.wires().size());
    }
  }
}

TEST_CASE("layer decomposition of the worked example") {
  Circuit c = testing::layered_example_circuit();
  Foliation f = complete_foliation(c);
  REQUIRE(f.hypersurfaces.size() == 4);
  CHECK(f.hypersurfaces[0] == WireSet{"wa", "wb", "wc", "wd"});
  CHECK(f.hypersurfaces[1] == WireSet{"wb", "wc", "wd", "wf"});
  CHECK(f.hypersurfaces[2] == WireSet{"wd", "we", "wf"});
  CHECK(f.hypersurfaces[3] == WireSet{"wf", "wg"});

  auto layers = layer_decomposition(c, f);
  REQUIRE(layers.size() == 5);
  CHECK(layers[0].ops == std::vector<std::string>{"alpha", "beta"});
  CHECK(layers[1].ops == std::vector<std::string>{"delta"});
  CHECK(layers[1].passthrough == std::vector<std::string>{"wb", "wc", "wd"});
  CHECK(layers[2].ops == std::vector<std::string>{"gamma"});
  CHECK(layers[2].passthrough == std::vector<std::string>{"wd", "wf"});
  CHECK(layers[3].ops == std::vector<std::string>{"epsilon"});
  CHECK(layers[3].passthrough == std::vector<std::string>{"wf"});
  CHECK(layers[4].ops == std::vector<std::string>{"zeta"});
  CHECK(layers[4].passthrough.empty());

  // pass-through wires sit in both bounding hypersurfaces
  for (std::size_t t = 1; t + 1 < layers.size(); ++t)
    for (const auto& w : layers[t].passthrough) {
      const auto& before = layers[t].before;
      const auto& after = layers[t].after;
      CHECK(std::find(before.begin(), before.end(), w) != before.end());
      CHECK(std::find(after.begin(), after.end(), w) != after.end());
    }
}

TEST_CASE("single wire decomposes into initial and final layer only") {
  Circuit c = testing::single_wire_circuit();
  auto layers = layer_decomposition(c, complete_foliation(c));
  REQUIRE(layers.size() == 2);
  CHECK(layers[0].ops == std::vector<std::string>{"p"});
  CHECK(layers[1].ops == std::vector<std::string>{"e"});
}

TEST_CASE("incomplete foliations are rejected") {
  Circuit c = testing::chain_circuit();
  Foliation partial{{WireSet{"w1"}, WireSet{"w2"}}};  // w3 missing
  CHECK_THROWS_AS(layer_decomposition(c, partial), Error);
  Foliation wrong{{WireSet{"w1"}, WireSet{"w1"}, WireSet{"w3"}}};  // skips w2
  CHECK_THROWS_AS(layer_decomposition(c, wrong), Error);
}

TEST_CASE("repeated hypersurfaces give identity layers") {
  Circuit c = testing::single_wire_circuit();
  Foliation f{{WireSet{"w1"}, WireSet{"w1"}}};
  auto layers = layer_decomposition(c, f);
  REQUIRE(layers.size() == 3);
  CHECK(layers[1].ops.empty());
  CHECK(layers[1].passthrough == std::vector<std::string>{"w1"});
}

TEST_CASE("enumeration honors the limit") {
  Circuit c = testing::two_strand_circuit();
  CHECK(enumerate_complete_foliations(c, 1).size() == 1);
  CHECK(enumerate_complete_foliations(c, 0).empty());
}
