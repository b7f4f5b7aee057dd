#include "gptc/classical.hpp"

#include <nlohmann/json.hpp>

#include "gptc/error.hpp"
#include "json_args.hpp"

namespace gptc {

namespace {

constexpr double kEntryTol = 1e-12;

void check_substochastic(const Eigen::MatrixXd& m, const std::string& what,
                         ValidationReport* report) {
  auto add = [&](const std::string& msg) {
    if (report)
      report->violations.push_back(
          {ViolationKind::invalid_transfer, msg, "", {}});
    else
      throw Error(msg);
  };
  if (m.minCoeff() < -kEntryTol)
    add(what + ": negative entry " + std::to_string(m.minCoeff()));
  for (int c = 0; c < m.cols(); ++c) {
    const double sum = m.col(c).sum();
    if (sum > 1.0 + kEntryTol)
      add(what + ": column " + std::to_string(c) + " sums to " +
          std::to_string(sum));
  }
}

}  // namespace

TransferMatrix classical_transfer_matrix(const Eigen::MatrixXd& m,
                                         const SystemType& in,
                                         const SystemType& out,
                                         std::string label) {
  check_substochastic(m, "classical transfer matrix", nullptr);
  TransferMatrix z;
  z.input = in;
  z.output = out;
  z.z = m;
  z.label = std::move(label);
  return z;
}

const std::string& ClassicalTheory::name() const {
  static const std::string n = "classical";
  return n;
}

void ClassicalTheory::declare_type(const std::string& label, int n) {
  if (label.empty()) throw Error("wire-type label must be non-empty");
  if (n < 1) throw Error("wire type needs at least one distinguishable state");
  if (types_.count(label)) throw Error("wire type redeclared: " + label);
  types_[label] = n;
}

int ClassicalTheory::fiducial_count(const std::string& label) const {
  return distinguishable_count(label);
}

EffectVector ClassicalTheory::trace_effect(const SystemType& system) const {
  return EffectVector{system,
                      Eigen::RowVectorXd::Ones(fiducial_count(system))};
}

StateVector ClassicalTheory::closure_state(const std::string& label) const {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(fiducial_count(label));
  p[0] = 1.0;
  return StateVector{SystemType{label}, p};
}

ValidationReport ClassicalTheory::validate_transfer(
    const TransferMatrix& z) const {
  ValidationReport report;
  if (z.z.rows() != fiducial_count(z.output) ||
      z.z.cols() != fiducial_count(z.input)) {
    report.violations.push_back(
        {ViolationKind::invalid_transfer,
         "transfer matrix shape does not match its systems", "", {}});
    return report;
  }
  check_substochastic(z.z, "transfer '" + z.label + "'", &report);
  return report;
}

bool ClassicalTheory::is_homogeneous(const StateVector& state) const {
  int support = 0;
  for (int i = 0; i < state.p.size(); ++i)
    if (std::abs(state.p[i]) > kEntryTol) ++support;
  return support <= 1;
}

std::vector<TransferMatrix> ClassicalTheory::make_gate(
    const GateSpec& gate, const SystemType& in, const SystemType& out) const {
  const int k_in = fiducial_count(in);
  const int k_out = fiducial_count(out);
  auto wrap = [&](Eigen::MatrixXd m, const std::string& label) {
    TransferMatrix z;
    z.input = in;
    z.output = out;
    z.z = std::move(m);
    z.label = label;
    return z;
  };
  auto expect_args = [&](std::size_t n) {
    if (gate.args.size() != n)
      throw Error("gate " + gate.name + ": expected " + std::to_string(n) +
                  " argument(s), got " + std::to_string(gate.args.size()));
  };

  if (gate.name == "id") {
    expect_args(0);
    if (in != out) throw Error("gate id: input and output types must match");
    return {wrap(Eigen::MatrixXd::Identity(k_out, k_in), "id")};
  }

  if (gate.name == "flip") {
    expect_args(1);
    const double p = detail::arg_real(gate.args[0], "flip");
    if (p < 0.0 || p > 1.0) throw Error("gate flip: probability outside [0,1]");
    if (in != out || in.size() != 1 || k_in != 2)
      throw Error("gate flip: needs one two-state wire in and out");
    Eigen::MatrixXd m(2, 2);
    m << 1.0 - p, p, p, 1.0 - p;
    return {wrap(m, "flip")};
  }

  if (gate.name == "set") {
    expect_args(1);
    const int i = detail::arg_int(gate.args[0], "set");
    if (out.size() != 1)
      throw Error("gate set: needs exactly one output wire");
    if (i < 0 || i >= k_out) throw Error("gate set: state index out of range");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k_out, k_in);
    m.row(i).setOnes();
    return {wrap(m, "set(" + std::to_string(i) + ")")};
  }

  if (gate.name == "readout") {
    expect_args(0);
    if (in.size() != 1)
      throw Error("gate readout: needs exactly one input wire");
    const bool keep = !out.is_null();
    if (keep && in != out)
      throw Error("gate readout: output type must match input");
    std::vector<TransferMatrix> zs;
    for (int k = 0; k < k_in; ++k) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(keep ? k_in : 1, k_in);
      m(keep ? k : 0, k) = 1.0;
      zs.push_back(wrap(std::move(m), "readout=" + std::to_string(k)));
    }
    return zs;
  }

  if (gate.name == "matrix") {
    if (gate.args.empty())
      throw Error("gate matrix: needs one matrix per outcome");
    std::vector<TransferMatrix> zs;
    Eigen::MatrixXd total = Eigen::MatrixXd::Zero(k_out, k_in);
    for (std::size_t k = 0; k < gate.args.size(); ++k) {
      Eigen::MatrixXd m = detail::arg_rmatrix(gate.args[k], "matrix");
      if (m.rows() != k_out || m.cols() != k_in)
        throw Error("gate matrix: outcome " + std::to_string(k) + " is " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                    ", expected " + std::to_string(k_out) + "x" +
                    std::to_string(k_in));
      if (m.minCoeff() < -kEntryTol)
        throw Error("gate matrix: negative entry in outcome " +
                    std::to_string(k));
      total += m;
      zs.push_back(wrap(std::move(m), "matrix=" + std::to_string(k)));
    }
    check_substochastic(total, "gate matrix (outcome sum)", nullptr);
    return zs;
  }

  throw Error("unknown classical gate: " + gate.name);
}

std::vector<std::string> ClassicalTheory::gate_names() const {
  return {"id", "flip", "set", "readout", "matrix"};
}

}  // namespace gptc
