#pragma once

// Random but bindable circuit documents, for the serializer round-trip
// property and the acceptance suite.

#include <random>

#include "gptc/dsl.hpp"

namespace gptc::testing {

CircuitDocument random_document(std::mt19937_64& rng) {
  CircuitDocument doc;
  const bool classical = rng() % 2 == 0;
  doc.theory_name = classical ? "classical" : "quantum";
  const std::string t = classical ? "c2" : "q2";
  doc.types.push_back(TypeDecl{t, 2, 1, 1});

  struct Open {
    std::string op;
    int port;
  };
  std::vector<Open> frontier;
  int next_wire = 0;
  const int preps = 1 + static_cast<int>(rng() % 2);
  for (int i = 0; i < preps; ++i) {
    OpDecl op;
    op.id = "p" + std::to_string(i);
    op.out_types = {t};
    if (classical) {
      op.gate.name = "set";
      op.gate.args = {nlohmann::json(static_cast<int>(rng() % 2))};
    } else {
      op.gate.name = "prep_ket";
      op.gate.args = {rng() % 2 == 0
                          ? nlohmann::json::parse("[1,0]")
                          : nlohmann::json::parse(
                                "[[0.7071067811865476,0],"
                                "[0,0.7071067811865476]]")};
    }
    doc.ops.push_back(op);
    frontier.push_back({op.id, 0});
  }
  const int gates = static_cast<int>(rng() % 3);
  for (int i = 0; i < gates; ++i) {
    OpDecl op;
    op.id = "g" + std::to_string(i);
    op.in_types = {t};
    op.out_types = {t};
    if (classical) {
      const char* names[] = {"id", "flip", "readout"};
      op.gate.name = names[rng() % 3];
      if (op.gate.name == "flip") op.gate.args = {nlohmann::json(0.25)};
      if (op.gate.name == "readout") op.outcomes = 2;
    } else {
      const char* names[] = {"id", "x", "h", "depolarize"};
      op.gate.name = names[rng() % 4];
      if (op.gate.name == "depolarize")
        op.gate.args = {nlohmann::json(0.125)};
    }
    const std::size_t pick = rng() % frontier.size();
    WireDecl w;
    w.id = "w" + std::to_string(next_wire++);
    w.from = PortSel{frontier[pick].op, false, frontier[pick].port};
    w.to = PortSel{op.id, true, 0};
    frontier[pick] = {op.id, 0};
    doc.ops.push_back(op);
    doc.wires.push_back(w);
  }
  int eff = 0;
  for (const auto& open : frontier) {
    OpDecl op;
    op.id = "e" + std::to_string(eff++);
    op.in_types = {t};
    op.gate.name = classical ? "readout" : "measure_z";
    WireDecl w;
    w.id = "w" + std::to_string(next_wire++);
    w.from = PortSel{open.op, false, open.port};
    w.to = PortSel{op.id, true, 0};
    doc.ops.push_back(op);
    doc.wires.push_back(w);
  }
  return doc;
}

}  // namespace gptc::testing
