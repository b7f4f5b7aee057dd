#include "gptc/generator.hpp"

#include <algorithm>

#include "gptc/classical.hpp"
#include "gptc/error.hpp"
#include "gptc/quantum.hpp"

namespace gptc {

Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = {gauss(rng), gauss(rng)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix phases so the distribution is Haar.
  for (int i = 0; i < dim; ++i) {
    const std::complex<double> d = r(i, i);
    q.col(i) *= std::abs(d) > 0 ? d / std::abs(d) : 1.0;
  }
  return q;
}

Eigen::MatrixXcd random_density_matrix(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = {gauss(rng), gauss(rng)};
  Eigen::MatrixXcd rho = g * g.adjoint();
  return rho / rho.trace().real();
}

Eigen::VectorXd random_simplex_point(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(1e-12, 1.0);
  Eigen::VectorXd p(dim);
  double total = 0.0;
  for (int i = 0; i < dim; ++i) total += (p[i] = -std::log(uni(rng)));
  return p / total;
}

namespace {

struct FrontierWire {
  std::string id;
  std::string type;
};

int idx(std::mt19937_64& rng, int bound) {
  return static_cast<int>(rng() % static_cast<unsigned long>(bound));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

// Random isometry from in_dim into out_dim*env (QR of a tall Ginibre).
std::vector<Eigen::MatrixXcd> random_channel_kraus(int in_dim, int out_dim,
                                                   std::mt19937_64& rng) {
  const int env = (in_dim + out_dim - 1) / out_dim + 1;
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd g(out_dim * env, in_dim);
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) g(i, j) = {gauss(rng), gauss(rng)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd v = Eigen::MatrixXcd(qr.householderQ()).leftCols(in_dim);
  std::vector<Eigen::MatrixXcd> kraus;
  for (int e = 0; e < env; ++e) {
    Eigen::MatrixXcd k(out_dim, in_dim);
    for (int o = 0; o < out_dim; ++o) k.row(o) = v.row(e * out_dim + o);
    kraus.push_back(std::move(k));
  }
  return kraus;
}

class CircuitSketch {
 public:
  CircuitSketch(std::mt19937_64& rng, const GeneratorOptions& opts,
                Theory& theory, bool classical)
      : rng_(rng), opts_(opts), theory_(theory), classical_(classical) {}

  GeneratedCircuit finish() && {
    GeneratedCircuit out;
    out.bound.circuit = builder_.build();
    out.bound.matrices = std::move(matrices_);
    out.bound.cp_maps = std::move(cp_maps_);
    return out;
  }

  std::string fresh_op() {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "op%02d", op_counter_++);
    return buf;
  }

  std::string fresh_wire() {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "w%02d", wire_counter_++);
    return buf;
  }

  std::string random_type() {
    const int n = opts_.type_dims[idx(rng_, opts_.type_dims.size())];
    const std::string label =
        (classical_ ? "c" : "q") + std::to_string(n);
    if (!theory_.has_type(label)) theory_.declare_type(label, n);
    return label;
  }

  bool outcome_budget_left() const {
    return outcome_combinations_ < opts_.max_outcome_combinations;
  }

  // Declares the op, wires its inputs to the given frontier wires, pushes
  // its outputs onto the frontier.
  void emit(const std::string& id, const std::vector<FrontierWire>& in_wires,
            const std::vector<std::string>& out_types, int n_outcomes,
            std::vector<TransferMatrix> zs, std::vector<CPMap> maps,
            bool close_last_output = false) {
    OperationNode op;
    op.id = id;
    for (const auto& w : in_wires) op.inputs.push_back({w.type, false});
    for (const auto& t : out_types) op.outputs.push_back({t, false});
    if (close_last_output && !op.outputs.empty())
      op.outputs.back().closed = true;
    op.outcomes.clear();
    for (int k = 0; k < n_outcomes; ++k)
      op.outcomes.push_back(std::to_string(k));
    builder_.add_operation(op);
    for (std::size_t p = 0; p < in_wires.size(); ++p)
      builder_.add_wire(in_wires[p].id,
                        sources_.at(in_wires[p].id),
                        PortRef{id, static_cast<int>(p)});
    for (std::size_t p = 0; p < out_types.size(); ++p) {
      if (close_last_output && p + 1 == out_types.size()) continue;
      FrontierWire w{fresh_wire(), out_types[p]};
      sources_[w.id] = PortRef{id, static_cast<int>(p)};
      frontier_.push_back(w);
    }
    matrices_[id] = std::move(zs);
    if (!maps.empty()) cp_maps_[id] = std::move(maps);
    outcome_combinations_ *= n_outcomes;
  }

  std::vector<FrontierWire> take_from_frontier(int count) {
    std::vector<FrontierWire> out;
    for (int i = 0; i < count; ++i) {
      const int at = idx(rng_, static_cast<int>(frontier_.size()));
      out.push_back(frontier_[at]);
      frontier_.erase(frontier_.begin() + at);
    }
    return out;
  }

  std::mt19937_64& rng_;
  const GeneratorOptions& opts_;
  Theory& theory_;
  bool classical_;
  CircuitBuilder builder_;
  std::map<std::string, std::vector<TransferMatrix>> matrices_;
  std::map<std::string, std::vector<CPMap>> cp_maps_;
  std::map<std::string, PortRef> sources_;
  std::vector<FrontierWire> frontier_;
  long outcome_combinations_ = 1;
  int op_counter_ = 0;
  int wire_counter_ = 0;
};

// ---- classical pieces ----

std::vector<TransferMatrix> classical_split_outcomes(
    const Eigen::MatrixXd& total, int n_outcomes, const SystemType& in,
    const SystemType& out, std::mt19937_64& rng, const std::string& label) {
  std::vector<Eigen::MatrixXd> parts(
      n_outcomes, Eigen::MatrixXd::Zero(total.rows(), total.cols()));
  for (int c = 0; c < total.cols(); ++c) {
    const Eigen::VectorXd weights = random_simplex_point(n_outcomes, rng);
    for (int k = 0; k < n_outcomes; ++k)
      parts[k].col(c) = weights[k] * total.col(c);
  }
  std::vector<TransferMatrix> zs;
  for (int k = 0; k < n_outcomes; ++k)
    zs.push_back(classical_transfer_matrix(
        parts[k], in, out, label + "=" + std::to_string(k)));
  return zs;
}

// ---- generator body ----

GeneratedCircuit generate(std::mt19937_64& rng, const std::string& theory_name,
                          const GeneratorOptions& opts) {
  const bool classical = theory_name == "classical";
  auto theory = make_theory(theory_name);
  CircuitSketch sk(rng, opts, *theory, classical);

  const int total_ops = 3 + idx(rng, std::max(1, opts.max_operations - 2));
  int preps = 1 + idx(rng, 3);
  int budget = std::max(2, total_ops);

  auto k_of = [&](const std::vector<std::string>& types) {
    SystemType t;
    t.factors = types;
    return theory->fiducial_count(t);
  };
  auto dim_of = [&](const std::vector<std::string>& types) {
    int n = 1;
    for (const auto& f : types) n *= theory->distinguishable_count(f);
    return n;
  };

  auto make_prep = [&]() {
    const int arity =
        1 + idx(rng, std::min(2, opts.max_frontier -
                                     static_cast<int>(sk.frontier_.size())));
    std::vector<std::string> out_types;
    for (int i = 0; i < arity; ++i) out_types.push_back(sk.random_type());
    const std::string id = sk.fresh_op();
    SystemType out_sys{out_types};
    const double scale =
        opts.norm_preserving ? 1.0 : uniform(rng, 0.4, 1.0);
    if (classical) {
      Eigen::VectorXd p =
          scale * random_simplex_point(k_of(out_types), rng);
      TransferMatrix z;
      z.input = SystemType{};
      z.output = out_sys;
      z.z = p;
      z.label = "prep";
      sk.emit(id, {}, out_types, 1, {z}, {});
    } else {
      std::normal_distribution<double> gauss;
      const int n = dim_of(out_types);
      Eigen::VectorXcd v(n);
      for (int i = 0; i < n; ++i) v[i] = {gauss(rng), gauss(rng)};
      v *= std::sqrt(scale) / v.norm();
      CPMap map = CPMap::from_kraus(1, n, {Eigen::MatrixXcd(v)});
      auto* qt = dynamic_cast<QuantumTheory*>(theory.get());
      TransferMatrix z = quantum_transfer_matrix(
          map, qt->system_basis(SystemType{}), qt->system_basis(out_sys),
          SystemType{}, out_sys, "prep");
      sk.emit(id, {}, out_types, 1, {z}, {map});
    }
  };

  auto make_middle = [&]() {
    // Mostly single-wire gates so parallel strands (and with them multiple
    // foliations) survive.
    const int in_arity =
        (static_cast<int>(sk.frontier_.size()) >= 2 && idx(rng, 3) == 0) ? 2
                                                                         : 1;
    auto ins = sk.take_from_frontier(in_arity);
    std::vector<std::string> in_types;
    for (const auto& w : ins) in_types.push_back(w.type);
    const int out_room = std::min(2, opts.max_frontier -
                                         static_cast<int>(sk.frontier_.size()));
    int out_arity = (out_room >= 2 && idx(rng, 3) == 0) ? 2 : 1;
    std::vector<std::string> out_types;
    for (int i = 0; i < out_arity; ++i) out_types.push_back(sk.random_type());
    const bool close_last = opts.allow_closed_ports && !opts.norm_preserving &&
                            out_arity > 1 && idx(rng, 6) == 0;
    const std::string id = sk.fresh_op();
    SystemType in_sys{in_types}, out_sys{out_types};
    const bool with_outcomes = sk.outcome_budget_left() && idx(rng, 3) == 0;
    const int n_outcomes = with_outcomes ? 2 : 1;
    const double scale =
        opts.norm_preserving ? 1.0 : uniform(rng, 0.5, 1.0);

    if (classical) {
      const int k_in = k_of(in_types), k_out = k_of(out_types);
      Eigen::MatrixXd total(k_out, k_in);
      for (int c = 0; c < k_in; ++c)
        total.col(c) = scale * random_simplex_point(k_out, rng);
      auto zs = classical_split_outcomes(total, n_outcomes, in_sys, out_sys,
                                         rng, "gate");
      sk.emit(id, ins, out_types, n_outcomes, std::move(zs), {},
              close_last);
    } else {
      auto* qt = dynamic_cast<QuantumTheory*>(theory.get());
      const int n_in = dim_of(in_types), n_out = dim_of(out_types);
      std::vector<CPMap> maps;
      if (n_outcomes == 1) {
        std::vector<Eigen::MatrixXcd> kraus =
            (n_in == n_out && idx(rng, 2) == 0)
                ? std::vector<Eigen::MatrixXcd>{random_unitary(n_in, rng)}
                : random_channel_kraus(n_in, n_out, rng);
        if (scale != 1.0)
          for (auto& k : kraus) k *= std::sqrt(scale);
        maps.push_back(CPMap::from_kraus(n_in, n_out, kraus));
      } else {
        // Split a trace-preserving channel across two outcomes by routing
        // through a measured basis on the output.
        std::vector<Eigen::MatrixXcd> kraus =
            random_channel_kraus(n_in, n_out, rng);
        Eigen::MatrixXcd basis = random_unitary(n_out, rng);
        for (int k = 0; k < n_outcomes; ++k) {
          std::vector<Eigen::MatrixXcd> part;
          for (int b = k; b < n_out; b += n_outcomes) {
            Eigen::MatrixXcd proj =
                basis.col(b) * basis.col(b).adjoint();
            for (const auto& kr : kraus)
              part.push_back(std::sqrt(scale) * proj * kr);
          }
          maps.push_back(CPMap::from_kraus(n_in, n_out, part));
        }
      }
      std::vector<TransferMatrix> zs;
      for (std::size_t k = 0; k < maps.size(); ++k)
        zs.push_back(quantum_transfer_matrix(
            maps[k], qt->system_basis(in_sys), qt->system_basis(out_sys),
            in_sys, out_sys, "gate=" + std::to_string(k)));
      sk.emit(id, ins, out_types, n_outcomes, std::move(zs), std::move(maps),
              close_last);
    }
  };

  auto make_effect = [&]() {
    const int in_arity =
        std::min<int>(2, static_cast<int>(sk.frontier_.size()));
    auto ins = sk.take_from_frontier(in_arity);
    std::vector<std::string> in_types;
    for (const auto& w : ins) in_types.push_back(w.type);
    const std::string id = sk.fresh_op();
    SystemType in_sys{in_types};
    const bool with_outcomes = sk.outcome_budget_left() && idx(rng, 2) == 0;

    if (classical) {
      const int k_in = k_of(in_types);
      const int n_outcomes = with_outcomes ? std::min(4, k_in) : 1;
      // Complete: rows sum to the all-ones effect.
      Eigen::MatrixXd rows(n_outcomes, k_in);
      for (int c = 0; c < k_in; ++c)
        rows.col(c) = random_simplex_point(n_outcomes, rng);
      if (!opts.norm_preserving) rows *= uniform(rng, 0.5, 1.0);
      std::vector<TransferMatrix> zs;
      for (int k = 0; k < n_outcomes; ++k) {
        TransferMatrix z;
        z.input = in_sys;
        z.output = SystemType{};
        z.z = rows.row(k);
        z.label = "effect=" + std::to_string(k);
        zs.push_back(std::move(z));
      }
      sk.emit(id, ins, {}, n_outcomes, std::move(zs), {});
    } else {
      auto* qt = dynamic_cast<QuantumTheory*>(theory.get());
      const int n_in = dim_of(in_types);
      const int n_outcomes = with_outcomes ? std::min(4, n_in) : 1;
      const double scale =
          opts.norm_preserving ? 1.0 : uniform(rng, 0.5, 1.0);
      std::vector<CPMap> maps;
      if (n_outcomes == 1) {
        CPMap map;
        map.in_dim = n_in;
        map.out_dim = 1;
        map.choi = scale * Eigen::MatrixXcd::Identity(n_in, n_in);
        maps.push_back(std::move(map));
      } else {
        Eigen::MatrixXcd basis = random_unitary(n_in, rng);
        for (int k = 0; k < n_outcomes; ++k) {
          Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n_in, n_in);
          for (int b = k; b < n_in; b += n_outcomes)
            e += basis.col(b) * basis.col(b).adjoint();
          CPMap map;
          map.in_dim = n_in;
          map.out_dim = 1;
          map.choi = scale * e.transpose();
          maps.push_back(std::move(map));
        }
      }
      std::vector<TransferMatrix> zs;
      for (std::size_t k = 0; k < maps.size(); ++k)
        zs.push_back(quantum_transfer_matrix(
            maps[k], qt->system_basis(in_sys), qt->system_basis(SystemType{}),
            in_sys, SystemType{}, "effect=" + std::to_string(k)));
      const int actual_outcomes = static_cast<int>(maps.size());
      sk.emit(id, ins, {}, actual_outcomes, std::move(zs), std::move(maps));
    }
  };

  // Interleave: preparations first, middles while budget lasts, then close
  // everything with effects.
  make_prep();
  --budget;
  --preps;
  while (true) {
    const int frontier = static_cast<int>(sk.frontier_.size());
    // Leave room for the effects needed to close the frontier.
    const int needed = (frontier + 1) / 2;
    if (budget <= needed) break;
    if (preps > 0 && frontier + 2 <= opts.max_frontier && idx(rng, 2) == 0) {
      make_prep();
      --preps;
    } else if (frontier > 0) {
      make_middle();
    } else {
      make_prep();
    }
    --budget;
  }
  while (!sk.frontier_.empty()) make_effect();

  GeneratedCircuit out = std::move(sk).finish();
  out.theory = std::move(theory);
  return out;
}

}  // namespace

GeneratedCircuit random_circuit(std::mt19937_64& rng,
                                const std::string& theory_name,
                                const GeneratorOptions& opts) {
  GeneratedCircuit out = generate(rng, theory_name, opts);
  auto report = out.bound.circuit.validate();
  if (!report.ok())
    throw Error("random_circuit produced an invalid circuit: " +
                report.violations.front().message);
  if (!out.bound.circuit.is_closed())
    throw Error("random_circuit produced an unclosed circuit");
  return out;
}

}  // namespace gptc
