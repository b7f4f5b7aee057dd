#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gptc/engine.hpp"
#include "gptc/theory.hpp"

namespace gptc {

/// A positioned parser or binder message. Lines and columns are 1-based;
/// columns count bytes.
struct Diagnostic {
  int line = 1;
  int col = 1;
  std::string message;

  std::string str() const;
};

struct TypeDecl {
  std::string label;
  int n = 0;
  int line = 1, col = 1;

  bool same_decl(const TypeDecl& o) const { return label == o.label && n == o.n; }
};

struct GateRef {
  std::string name;
  std::vector<nlohmann::json> args;

  bool operator==(const GateRef& o) const {
    return name == o.name && args == o.args;
  }
};

struct OpDecl {
  std::string id;
  std::vector<std::string> in_types;
  std::vector<std::string> out_types;
  GateRef gate;
  std::optional<int> outcomes;  // declared outcome count, checked at bind
  int line = 1, col = 1;

  bool same_decl(const OpDecl& o) const {
    return id == o.id && in_types == o.in_types && out_types == o.out_types &&
           gate == o.gate && outcomes == o.outcomes;
  }
};

struct PortSel {
  std::string op;
  bool input = false;
  int port = 0;

  bool operator==(const PortSel&) const = default;
  std::string str() const;
};

struct WireDecl {
  std::string id;
  PortSel from;  // output side
  PortSel to;    // input side
  int line = 1, col = 1;

  bool same_decl(const WireDecl& o) const {
    return id == o.id && from == o.from && to == o.to;
  }
};

struct CloseDecl {
  PortSel port;
  int line = 1, col = 1;

  bool same_decl(const CloseDecl& o) const { return port == o.port; }
};

/// Parsed form of a `.gptc` document (or its JSON equivalent).
struct CircuitDocument {
  std::string theory_name;
  std::vector<TypeDecl> types;
  std::vector<OpDecl> ops;
  std::vector<WireDecl> wires;
  std::vector<CloseDecl> closes;

  /// Structural equality, ignoring source positions and declaration order.
  bool same_document(const CircuitDocument& other) const;
};

struct ParseResult {
  std::optional<CircuitDocument> document;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return document.has_value(); }
};

/// Line-oriented grammar:
///   theory <name>
///   type <label> N=<int>
///   op <id> : <in-types> -> <out-types> gate=<name(args)> [outcomes=<k>]
///   wire <id> <op>.out<k> -> <op>.in<k>
///   close <op>.<out|in><k>
///   # comment
/// Never throws; on failure the diagnostics carry positions.
ParseResult parse_circuit(const std::string& text);

/// Canonical text: types, ops, wires, closes, each sorted by id. Gate
/// arguments round-trip bit-exactly.
std::string serialize_circuit(const CircuitDocument& doc);

/// JSON interchange form (schema 1).
nlohmann::json document_to_json(const CircuitDocument& doc);
ParseResult document_from_json(const std::string& json_text);

/// Resolves the document against its theory's type and gate registries and
/// runs the core graph validation. On success `theory` and `bound` are
/// usable; diagnostics are positioned at the offending declaration.
struct BindResult {
  std::unique_ptr<Theory> theory;
  BoundCircuit bound;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return theory != nullptr && diagnostics.empty(); }
};

BindResult bind_document(const CircuitDocument& doc);

/// parse_circuit (or document_from_json) followed by bind_document.
struct LoadResult {
  std::optional<CircuitDocument> document;
  std::unique_ptr<Theory> theory;
  BoundCircuit bound;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return document && theory && diagnostics.empty(); }
};

LoadResult load_circuit(const std::string& text, bool as_json = false);

}  // namespace gptc
