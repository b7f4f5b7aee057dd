#include "gptc/dsl.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "gptc/error.hpp"

namespace gptc {

namespace {

struct Token {
  std::string text;
  int col = 1;  // 1-based byte column
};

// Splits a line into whitespace-separated tokens, keeping bracketed spans
// (parentheses and square brackets) together so JSON gate arguments with
// spaces survive.
std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;  // comment to end of line (top level only)
    const std::size_t start = i;
    int depth = 0;
    while (i < line.size()) {
      const char ch = line[i];
      if (depth == 0 && std::isspace(static_cast<unsigned char>(ch))) break;
      if (depth == 0 && ch == '#') break;
      if (ch == '(' || ch == '[' || ch == '{') ++depth;
      if (ch == ')' || ch == ']' || ch == '}') --depth;
      ++i;
    }
    out.push_back(Token{line.substr(start, i - start),
                        static_cast<int>(start) + 1});
  }
  return out;
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' ||
          ch == '-' || ch == ':'))
      return false;
  return true;
}

// Splits "name(a, b, ...)" into the name and top-level argument strings.
bool split_gate(const std::string& text, std::string* name,
                std::vector<std::string>* args, std::string* err) {
  const auto open = text.find('(');
  if (open == std::string::npos) {
    *name = text;
    return valid_identifier(*name) ? true
                                   : (*err = "bad gate name", false);
  }
  *name = text.substr(0, open);
  if (!valid_identifier(*name)) {
    *err = "bad gate name";
    return false;
  }
  if (text.back() != ')') {
    *err = "unbalanced parentheses in gate arguments";
    return false;
  }
  const std::string body = text.substr(open + 1, text.size() - open - 2);
  int depth = 0;
  std::string cur;
  for (char ch : body) {
    if (ch == '(' || ch == '[' || ch == '{') ++depth;
    if (ch == ')' || ch == ']' || ch == '}') --depth;
    if (depth < 0) {
      *err = "unbalanced brackets in gate arguments";
      return false;
    }
    if (ch == ',' && depth == 0) {
      args->push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth != 0) {
    *err = "unbalanced brackets in gate arguments";
    return false;
  }
  if (!cur.empty() || !args->empty()) args->push_back(cur);
  return true;
}

bool parse_port_sel(const std::string& text, PortSel* sel) {
  const auto dot = text.rfind('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 >= text.size())
    return false;
  sel->op = text.substr(0, dot);
  std::string rest = text.substr(dot + 1);
  if (rest.rfind("in", 0) == 0) {
    sel->input = true;
    rest = rest.substr(2);
  } else if (rest.rfind("out", 0) == 0) {
    sel->input = false;
    rest = rest.substr(3);
  } else {
    return false;
  }
  if (rest.empty() ||
      !std::all_of(rest.begin(), rest.end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return false;
  if (rest.size() > 6) return false;
  sel->port = std::stoi(rest);
  return valid_identifier(sel->op);
}

struct DocChecker {
  const CircuitDocument& doc;
  std::vector<Diagnostic>& diags;

  void add(int line, int col, const std::string& msg) {
    diags.push_back(Diagnostic{line, col, msg});
  }

  const OpDecl* find_op(const std::string& id) const {
    for (const auto& op : doc.ops)
      if (op.id == id) return &op;
    return nullptr;
  }

  void run() {
    if (doc.theory_name.empty())
      add(1, 1, "missing 'theory' declaration");

    std::set<std::string> labels;
    for (const auto& t : doc.types) {
      if (!labels.insert(t.label).second)
        add(t.line, t.col, "duplicate type '" + t.label + "'");
      if (t.n < 1) add(t.line, t.col, "type needs N >= 1");
    }
    std::set<std::string> op_ids;
    for (const auto& op : doc.ops) {
      if (!op_ids.insert(op.id).second)
        add(op.line, op.col, "duplicate operation id '" + op.id + "'");
      for (const auto& t : op.in_types)
        if (!labels.count(t))
          add(op.line, op.col, "unknown type '" + t + "'");
      for (const auto& t : op.out_types)
        if (!labels.count(t))
          add(op.line, op.col, "unknown type '" + t + "'");
      if (op.outcomes && *op.outcomes < 1)
        add(op.line, op.col, "outcomes must be at least 1");
    }
    std::set<std::string> wire_ids;
    for (const auto& w : doc.wires) {
      if (!wire_ids.insert(w.id).second)
        add(w.line, w.col, "duplicate wire id '" + w.id + "'");
      for (const PortSel* sel : {&w.from, &w.to}) {
        const OpDecl* op = find_op(sel->op);
        if (!op) {
          add(w.line, w.col, "unknown operation '" + sel->op + "'");
          continue;
        }
        const auto& ports = sel->input ? op->in_types : op->out_types;
        if (sel->port < 0 || sel->port >= static_cast<int>(ports.size()))
          add(w.line, w.col,
              "operation '" + sel->op + "' has no port " + sel->str());
      }
      if (w.from.input)
        add(w.line, w.col, "wire must leave an output port");
      if (!w.to.input) add(w.line, w.col, "wire must enter an input port");
    }
    for (const auto& cl : doc.closes) {
      const OpDecl* op = find_op(cl.port.op);
      if (!op) {
        add(cl.line, cl.col, "unknown operation '" + cl.port.op + "'");
        continue;
      }
      const auto& ports = cl.port.input ? op->in_types : op->out_types;
      if (cl.port.port < 0 || cl.port.port >= static_cast<int>(ports.size()))
        add(cl.line, cl.col,
            "operation '" + cl.port.op + "' has no port " + cl.port.str());
    }
  }
};

}  // namespace

std::string Diagnostic::str() const {
  std::ostringstream os;
  os << line << ":" << col << ": " << message;
  return os.str();
}

std::string PortSel::str() const {
  return op + "." + (input ? "in" : "out") + std::to_string(port);
}

bool CircuitDocument::same_document(const CircuitDocument& other) const {
  if (theory_name != other.theory_name) return false;
  auto match = [](const auto& a, const auto& b, auto key) {
    if (a.size() != b.size()) return false;
    auto sa = a;
    auto sb = b;
    std::sort(sa.begin(), sa.end(),
              [&](const auto& x, const auto& y) { return key(x) < key(y); });
    std::sort(sb.begin(), sb.end(),
              [&](const auto& x, const auto& y) { return key(x) < key(y); });
    for (std::size_t i = 0; i < sa.size(); ++i)
      if (!sa[i].same_decl(sb[i])) return false;
    return true;
  };
  return match(types, other.types,
               [](const TypeDecl& t) { return t.label; }) &&
         match(ops, other.ops, [](const OpDecl& o) { return o.id; }) &&
         match(wires, other.wires, [](const WireDecl& w) { return w.id; }) &&
         match(closes, other.closes,
               [](const CloseDecl& c) { return c.port.str(); });
}

ParseResult parse_circuit(const std::string& text) {
  ParseResult result;
  CircuitDocument doc;
  auto& diags = result.diagnostics;
  auto add = [&diags](int line, int col, const std::string& msg) {
    diags.push_back(Diagnostic{line, col, msg});
  };

  int line_no = 0;
  std::istringstream stream(text);
  std::string line;
  bool saw_theory = false;
  while (std::getline(stream, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<Token> tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string& head = tokens[0].text;

    if (head == "theory") {
      if (tokens.size() != 2 || !valid_identifier(tokens[1].text)) {
        add(line_no, tokens[0].col, "expected: theory <name>");
        continue;
      }
      if (saw_theory) {
        add(line_no, tokens[0].col, "theory declared twice");
        continue;
      }
      saw_theory = true;
      doc.theory_name = tokens[1].text;
      continue;
    }

    if (head == "type") {
      if (tokens.size() != 3 || !valid_identifier(tokens[1].text) ||
          tokens[2].text.rfind("N=", 0) != 0) {
        add(line_no, tokens[0].col, "expected: type <label> N=<int>");
        continue;
      }
      const std::string num = tokens[2].text.substr(2);
      if (num.empty() || num.size() > 6 ||
          !std::all_of(num.begin(), num.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
          })) {
        add(line_no, tokens[2].col, "bad N value '" + num + "'");
        continue;
      }
      doc.types.push_back(
          TypeDecl{tokens[1].text, std::stoi(num), line_no, tokens[0].col});
      continue;
    }

    if (head == "op") {
      // op <id> : <in-types> -> <out-types> gate=<...> [outcomes=<k>]
      if (tokens.size() < 4 || !valid_identifier(tokens[1].text) ||
          tokens[2].text != ":") {
        add(line_no, tokens[0].col,
            "expected: op <id> : <in-types> -> <out-types> gate=<g>");
        continue;
      }
      OpDecl op;
      op.id = tokens[1].text;
      op.line = line_no;
      op.col = tokens[0].col;
      std::size_t i = 3;
      bool ok = true;
      while (i < tokens.size() && tokens[i].text != "->") {
        if (!valid_identifier(tokens[i].text)) {
          add(line_no, tokens[i].col, "bad type label '" + tokens[i].text + "'");
          ok = false;
          break;
        }
        op.in_types.push_back(tokens[i].text);
        ++i;
      }
      if (!ok) continue;
      if (i == tokens.size()) {
        add(line_no, tokens[0].col, "missing '->' in op declaration");
        continue;
      }
      ++i;  // skip ->
      while (i < tokens.size() && tokens[i].text.find('=') == std::string::npos) {
        if (!valid_identifier(tokens[i].text)) {
          add(line_no, tokens[i].col, "bad type label '" + tokens[i].text + "'");
          ok = false;
          break;
        }
        op.out_types.push_back(tokens[i].text);
        ++i;
      }
      if (!ok) continue;
      bool saw_gate = false;
      for (; i < tokens.size(); ++i) {
        const std::string& attr = tokens[i].text;
        const auto eq = attr.find('=');
        if (eq == std::string::npos) {
          add(line_no, tokens[i].col, "expected key=value, got '" + attr + "'");
          ok = false;
          break;
        }
        const std::string key = attr.substr(0, eq);
        const std::string value = attr.substr(eq + 1);
        if (key == "gate") {
          std::string err;
          std::vector<std::string> raw_args;
          if (!split_gate(value, &op.gate.name, &raw_args, &err)) {
            add(line_no, tokens[i].col, err);
            ok = false;
            break;
          }
          for (const auto& raw : raw_args) {
            nlohmann::json j =
                nlohmann::json::parse(raw, nullptr, /*allow_exceptions=*/false);
            if (j.is_discarded()) {
              add(line_no, tokens[i].col,
                  "gate argument is not valid JSON: '" + raw + "'");
              ok = false;
              break;
            }
            op.gate.args.push_back(std::move(j));
          }
          if (!ok) break;
          saw_gate = true;
        } else if (key == "outcomes") {
          if (value.empty() || value.size() > 6 ||
              !std::all_of(value.begin(), value.end(), [](char c) {
                return std::isdigit(static_cast<unsigned char>(c));
              })) {
            add(line_no, tokens[i].col, "bad outcomes value");
            ok = false;
            break;
          }
          op.outcomes = std::stoi(value);
        } else {
          add(line_no, tokens[i].col, "unknown attribute '" + key + "'");
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (!saw_gate) {
        add(line_no, tokens[0].col, "op declaration needs gate=<name(...)>");
        continue;
      }
      doc.ops.push_back(std::move(op));
      continue;
    }

    if (head == "wire") {
      if (tokens.size() != 5 || tokens[3].text != "->" ||
          !valid_identifier(tokens[1].text)) {
        add(line_no, tokens[0].col,
            "expected: wire <id> <op>.out<k> -> <op>.in<k>");
        continue;
      }
      WireDecl w;
      w.id = tokens[1].text;
      w.line = line_no;
      w.col = tokens[0].col;
      if (!parse_port_sel(tokens[2].text, &w.from)) {
        add(line_no, tokens[2].col, "bad port '" + tokens[2].text + "'");
        continue;
      }
      if (!parse_port_sel(tokens[4].text, &w.to)) {
        add(line_no, tokens[4].col, "bad port '" + tokens[4].text + "'");
        continue;
      }
      doc.wires.push_back(std::move(w));
      continue;
    }

    if (head == "close") {
      CloseDecl cl;
      cl.line = line_no;
      cl.col = tokens[0].col;
      if (tokens.size() != 2 || !parse_port_sel(tokens[1].text, &cl.port)) {
        add(line_no, tokens[0].col, "expected: close <op>.<out|in><k>");
        continue;
      }
      doc.closes.push_back(cl);
      continue;
    }

    add(line_no, tokens[0].col, "unknown directive '" + head + "'");
  }

  DocChecker{doc, diags}.run();
  if (diags.empty()) result.document = std::move(doc);
  return result;
}

namespace {

std::string gate_str(const GateRef& gate) {
  if (gate.args.empty()) return gate.name;
  std::string out = gate.name + "(";
  for (std::size_t i = 0; i < gate.args.size(); ++i) {
    if (i) out += ",";
    out += gate.args[i].dump();
  }
  return out + ")";
}

}  // namespace

std::string serialize_circuit(const CircuitDocument& doc) {
  std::ostringstream os;
  os << "theory " << doc.theory_name << "\n";

  auto types = doc.types;
  std::sort(types.begin(), types.end(),
            [](const auto& a, const auto& b) { return a.label < b.label; });
  for (const auto& t : types) os << "type " << t.label << " N=" << t.n << "\n";

  auto ops = doc.ops;
  std::sort(ops.begin(), ops.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  for (const auto& op : ops) {
    os << "op " << op.id << " :";
    for (const auto& t : op.in_types) os << " " << t;
    os << " ->";
    for (const auto& t : op.out_types) os << " " << t;
    os << " gate=" << gate_str(op.gate);
    if (op.outcomes) os << " outcomes=" << *op.outcomes;
    os << "\n";
  }

  auto wires = doc.wires;
  std::sort(wires.begin(), wires.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  for (const auto& w : wires)
    os << "wire " << w.id << " " << w.from.str() << " -> " << w.to.str()
       << "\n";

  auto closes = doc.closes;
  std::sort(closes.begin(), closes.end(), [](const auto& a, const auto& b) {
    return a.port.str() < b.port.str();
  });
  for (const auto& cl : closes) os << "close " << cl.port.str() << "\n";
  return os.str();
}

nlohmann::json document_to_json(const CircuitDocument& doc) {
  nlohmann::json j;
  j["schema"] = 1;
  j["theory"] = doc.theory_name;
  j["types"] = nlohmann::json::array();
  for (const auto& t : doc.types)
    j["types"].push_back({{"label", t.label}, {"n", t.n}});
  j["ops"] = nlohmann::json::array();
  for (const auto& op : doc.ops) {
    nlohmann::json o;
    o["id"] = op.id;
    o["inputs"] = op.in_types;
    o["outputs"] = op.out_types;
    o["gate"] = {{"name", op.gate.name}, {"args", op.gate.args}};
    if (op.outcomes) o["outcomes"] = *op.outcomes;
    j["ops"].push_back(std::move(o));
  }
  j["wires"] = nlohmann::json::array();
  for (const auto& w : doc.wires)
    j["wires"].push_back({{"id", w.id},
                          {"from", {{"op", w.from.op}, {"port", w.from.port}}},
                          {"to", {{"op", w.to.op}, {"port", w.to.port}}}});
  j["close"] = nlohmann::json::array();
  for (const auto& cl : doc.closes)
    j["close"].push_back({{"op", cl.port.op},
                          {"side", cl.port.input ? "in" : "out"},
                          {"port", cl.port.port}});
  return j;
}

ParseResult document_from_json(const std::string& json_text) {
  ParseResult result;
  auto add = [&result](const std::string& msg) {
    result.diagnostics.push_back(Diagnostic{1, 1, msg});
  };
  nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    add("input is not a JSON object");
    return result;
  }
  CircuitDocument doc;
  try {
    if (j.contains("schema") && j["schema"] != 1) {
      add("unsupported schema version");
      return result;
    }
    doc.theory_name = j.value("theory", std::string{});
    for (const auto& t : j.value("types", nlohmann::json::array()))
      doc.types.push_back(TypeDecl{t.at("label").get<std::string>(),
                                   t.at("n").get<int>(), 1, 1});
    for (const auto& o : j.value("ops", nlohmann::json::array())) {
      OpDecl op;
      op.id = o.at("id").get<std::string>();
      op.in_types = o.value("inputs", std::vector<std::string>{});
      op.out_types = o.value("outputs", std::vector<std::string>{});
      op.gate.name = o.at("gate").at("name").get<std::string>();
      for (const auto& a :
           o.at("gate").value("args", nlohmann::json::array()))
        op.gate.args.push_back(a);
      if (o.contains("outcomes")) op.outcomes = o["outcomes"].get<int>();
      doc.ops.push_back(std::move(op));
    }
    for (const auto& w : j.value("wires", nlohmann::json::array())) {
      WireDecl wd;
      wd.id = w.at("id").get<std::string>();
      wd.from = PortSel{w.at("from").at("op").get<std::string>(), false,
                        w.at("from").at("port").get<int>()};
      wd.to = PortSel{w.at("to").at("op").get<std::string>(), true,
                      w.at("to").at("port").get<int>()};
      doc.wires.push_back(std::move(wd));
    }
    for (const auto& c : j.value("close", nlohmann::json::array())) {
      CloseDecl cl;
      cl.port = PortSel{c.at("op").get<std::string>(),
                        c.at("side").get<std::string>() == "in",
                        c.at("port").get<int>()};
      doc.closes.push_back(cl);
    }
  } catch (const nlohmann::json::exception& e) {
    add(std::string("malformed circuit JSON: ") + e.what());
    return result;
  }
  DocChecker{doc, result.diagnostics}.run();
  if (result.diagnostics.empty()) result.document = std::move(doc);
  return result;
}

BindResult bind_document(const CircuitDocument& doc) {
  BindResult result;
  auto add = [&result](int line, int col, const std::string& msg) {
    result.diagnostics.push_back(Diagnostic{line, col, msg});
  };

  std::unique_ptr<Theory> theory;
  try {
    theory = make_theory(doc.theory_name);
  } catch (const Error& e) {
    add(1, 1, e.what());
    return result;
  }
  for (const auto& t : doc.types) {
    try {
      theory->declare_type(t.label, t.n);
    } catch (const Error& e) {
      add(t.line, t.col, e.what());
    }
  }
  if (!result.diagnostics.empty()) return result;

  auto* quantum = dynamic_cast<QuantumTheory*>(theory.get());

  CircuitBuilder builder;
  for (const auto& opd : doc.ops) {
    OperationNode node;
    node.id = opd.id;
    for (const auto& t : opd.in_types) node.inputs.push_back({t, false});
    for (const auto& t : opd.out_types) node.outputs.push_back({t, false});
    node.setting = gate_str(opd.gate);
    for (const auto& cl : doc.closes) {
      if (cl.port.op != opd.id) continue;
      auto& ports = cl.port.input ? node.inputs : node.outputs;
      if (cl.port.port >= 0 && cl.port.port < static_cast<int>(ports.size()))
        ports[cl.port.port].closed = true;
    }

    SystemType in{opd.in_types}, out{opd.out_types};
    GateSpec spec{opd.gate.name, opd.gate.args};
    std::vector<TransferMatrix> zs;
    try {
      zs = theory->make_gate(spec, in, out);
      if (quantum)
        result.bound.cp_maps[opd.id] =
            quantum->make_gate_maps(spec, in, out);
    } catch (const Error& e) {
      add(opd.line, opd.col, e.what());
      continue;
    }
    if (opd.outcomes && *opd.outcomes != static_cast<int>(zs.size())) {
      add(opd.line, opd.col,
          "gate '" + opd.gate.name + "' has " + std::to_string(zs.size()) +
              " outcomes, not " + std::to_string(*opd.outcomes));
      continue;
    }
    node.outcomes.clear();
    for (std::size_t k = 0; k < zs.size(); ++k)
      node.outcomes.push_back(std::to_string(k));
    builder.add_operation(std::move(node));
    result.bound.matrices[opd.id] = std::move(zs);
  }
  for (const auto& w : doc.wires)
    builder.add_wire(w.id, PortRef{w.from.op, w.from.port},
                     PortRef{w.to.op, w.to.port});
  if (!result.diagnostics.empty()) return result;

  result.bound.circuit = builder.build();

  // Core graph validation, mapped back to declaration positions.
  auto report = result.bound.circuit.validate();
  for (const auto& v : report.violations) {
    int line = 1, col = 1;
    for (const auto& w : doc.wires)
      if (w.id == v.subject) {
        line = w.line;
        col = w.col;
      }
    for (const auto& op : doc.ops)
      if (op.id == v.subject) {
        line = op.line;
        col = op.col;
      }
    if (v.kind == ViolationKind::directed_cycle && !v.cycle_witness.empty()) {
      for (const auto& w : doc.wires)
        if (std::find(v.cycle_witness.begin(), v.cycle_witness.end(),
                      w.from.op) != v.cycle_witness.end()) {
          line = w.line;
          col = w.col;
          break;
        }
    }
    add(line, col, v.message);
  }
  if (!result.diagnostics.empty()) return result;

  result.theory = std::move(theory);
  return result;
}

LoadResult load_circuit(const std::string& text, bool as_json) {
  LoadResult out;
  ParseResult parsed = as_json ? document_from_json(text) : parse_circuit(text);
  out.diagnostics = std::move(parsed.diagnostics);
  if (!parsed.document) return out;
  out.document = std::move(parsed.document);

  BindResult bound = bind_document(*out.document);
  for (auto& d : bound.diagnostics) out.diagnostics.push_back(std::move(d));
  if (!bound.theory) return out;
  out.theory = std::move(bound.theory);
  out.bound = std::move(bound.bound);
  return out;
}

}  // namespace gptc
