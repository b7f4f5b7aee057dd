#include "gptc/quantum.hpp"

#include <nlohmann/json.hpp>
#include <unsupported/Eigen/KroneckerProduct>

#include "gptc/error.hpp"
#include "json_args.hpp"

namespace gptc {

namespace {

constexpr double kPsdTol = 1e-10;
constexpr std::complex<double> kI{0.0, 1.0};

Eigen::MatrixXcd projector(const Eigen::VectorXcd& v) {
  return v * v.adjoint();
}

}  // namespace

QuantumFiducialBasis QuantumFiducialBasis::canonical(int n) {
  if (n < 1) throw Error("fiducial basis needs dimension at least one");
  QuantumFiducialBasis b;
  b.dim = n;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    v[i] = 1.0;
    b.ops.push_back(projector(v));
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
      v[i] = s;
      v[j] = s;
      b.ops.push_back(projector(v));
      v[j] = s * kI;
      b.ops.push_back(projector(v));
    }
  }

  const int k = static_cast<int>(b.ops.size());
  b.gram.resize(k, k);
  for (int a = 0; a < k; ++a)
    for (int c = 0; c < k; ++c)
      b.gram(a, c) = (b.ops[a] * b.ops[c]).trace().real();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(b.gram);
  if (!lu.isInvertible())
    throw Error("fiducial basis Gram matrix is singular");
  b.gram_inv = lu.inverse();
  return b;
}

QuantumFiducialBasis QuantumFiducialBasis::product(
    const std::vector<const QuantumFiducialBasis*>& parts) {
  QuantumFiducialBasis b;
  b.dim = 1;
  b.ops = {Eigen::MatrixXcd::Identity(1, 1)};
  b.gram = Eigen::MatrixXd::Identity(1, 1);
  b.gram_inv = b.gram;
  for (const auto* part : parts) {
    QuantumFiducialBasis next;
    next.dim = b.dim * part->dim;
    next.ops.reserve(b.ops.size() * part->ops.size());
    for (const auto& left : b.ops)
      for (const auto& right : part->ops)
        next.ops.push_back(Eigen::kroneckerProduct(left, right).eval());
    next.gram = Eigen::kroneckerProduct(b.gram, part->gram);
    next.gram_inv = Eigen::kroneckerProduct(b.gram_inv, part->gram_inv);
    b = std::move(next);
  }
  return b;
}

Eigen::VectorXd QuantumFiducialBasis::embed(const Eigen::MatrixXcd& rho) const {
  if (rho.rows() != dim || rho.cols() != dim)
    throw Error("embed: density matrix dimension mismatch");
  Eigen::VectorXd p(static_cast<int>(ops.size()));
  for (std::size_t a = 0; a < ops.size(); ++a)
    p[static_cast<int>(a)] = (ops[a] * rho).trace().real();
  return p;
}

Eigen::MatrixXcd QuantumFiducialBasis::unembed(const Eigen::VectorXd& p) const {
  if (p.size() != static_cast<int>(ops.size()))
    throw Error("unembed: fiducial vector length mismatch");
  Eigen::VectorXd s = gram_inv * p;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t a = 0; a < ops.size(); ++a)
    rho += s[static_cast<int>(a)] * ops[a];
  return rho;
}

CPMap CPMap::from_kraus(int in_dim, int out_dim,
                        const std::vector<Eigen::MatrixXcd>& kraus) {
  CPMap map;
  map.in_dim = in_dim;
  map.out_dim = out_dim;
  map.choi = Eigen::MatrixXcd::Zero(in_dim * out_dim, in_dim * out_dim);
  for (const auto& k : kraus) {
    if (k.rows() != out_dim || k.cols() != in_dim)
      throw Error("from_kraus: operator shape mismatch");
    // vec(K) in (input, output) block order.
    Eigen::VectorXcd v(in_dim * out_dim);
    for (int i = 0; i < in_dim; ++i)
      for (int o = 0; o < out_dim; ++o) v[i * out_dim + o] = k(o, i);
    map.choi += v * v.adjoint();
  }
  return map;
}

CPMap CPMap::identity(int dim) {
  return from_kraus(dim, dim, {Eigen::MatrixXcd::Identity(dim, dim)});
}

Eigen::MatrixXcd CPMap::apply(const Eigen::MatrixXcd& rho) const {
  if (rho.rows() != in_dim || rho.cols() != in_dim)
    throw Error("CPMap::apply: input dimension mismatch");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(out_dim, out_dim);
  for (int i = 0; i < in_dim; ++i)
    for (int j = 0; j < in_dim; ++j) {
      if (rho(i, j) == std::complex<double>(0.0, 0.0)) continue;
      out += rho(i, j) * choi.block(i * out_dim, j * out_dim, out_dim, out_dim);
    }
  return out;
}

CPMap CPMap::compose_after(const CPMap& first) const {
  if (in_dim != first.out_dim)
    throw Error("compose_after: dimension mismatch");
  CPMap out;
  out.in_dim = first.in_dim;
  out.out_dim = out_dim;
  out.choi = Eigen::MatrixXcd::Zero(out.in_dim * out.out_dim,
                                    out.in_dim * out.out_dim);
  for (int i = 0; i < out.in_dim; ++i)
    for (int j = 0; j < out.in_dim; ++j) {
      Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(out.in_dim, out.in_dim);
      e(i, j) = 1.0;
      out.choi.block(i * out.out_dim, j * out.out_dim, out.out_dim,
                     out.out_dim) = apply(first.apply(e));
    }
  return out;
}

std::vector<Eigen::MatrixXcd> CPMap::kraus_operators(double tol) const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(choi);
  const double scale = std::max(1.0, es.eigenvalues().maxCoeff());
  std::vector<Eigen::MatrixXcd> out;
  for (int m = 0; m < es.eigenvalues().size(); ++m) {
    const double lambda = es.eigenvalues()[m];
    if (lambda <= tol * scale) continue;
    Eigen::VectorXcd v = std::sqrt(lambda) * es.eigenvectors().col(m);
    Eigen::MatrixXcd k(out_dim, in_dim);
    for (int i = 0; i < in_dim; ++i)
      for (int o = 0; o < out_dim; ++o) k(o, i) = v[i * out_dim + o];
    out.push_back(std::move(k));
  }
  return out;
}

ValidationReport CPMap::validate() const {
  ValidationReport report;
  auto add = [&report](const std::string& msg) {
    report.violations.push_back({ViolationKind::invalid_transfer, msg, "", {}});
  };
  if (choi.rows() != in_dim * out_dim || choi.cols() != in_dim * out_dim) {
    add("Choi matrix shape mismatch");
    return report;
  }
  if ((choi - choi.adjoint()).cwiseAbs().maxCoeff() > kPsdTol)
    add("Choi matrix is not Hermitian");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(choi);
  const double lmax = std::max(1.0, es.eigenvalues().maxCoeff());
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin < -kPsdTol * lmax)
    add("map is not completely positive: Choi eigenvalue " +
        std::to_string(lmin));

  // Partial trace over the output block; trace non-increasing means
  // identity minus it stays positive semidefinite.
  Eigen::MatrixXcd reduced = Eigen::MatrixXcd::Zero(in_dim, in_dim);
  for (int i = 0; i < in_dim; ++i)
    for (int j = 0; j < in_dim; ++j)
      reduced(i, j) =
          choi.block(i * out_dim, j * out_dim, out_dim, out_dim).trace();
  Eigen::MatrixXcd slack =
      Eigen::MatrixXcd::Identity(in_dim, in_dim) - reduced;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(slack);
  if (es2.eigenvalues().minCoeff() < -kPsdTol * lmax)
    add("map increases trace: slack eigenvalue " +
        std::to_string(es2.eigenvalues().minCoeff()));
  return report;
}

TransferMatrix quantum_transfer_matrix(const CPMap& map,
                                       const QuantumFiducialBasis& basis_in,
                                       const QuantumFiducialBasis& basis_out,
                                       const SystemType& in,
                                       const SystemType& out,
                                       std::string label) {
  auto report = map.validate();
  if (!report.ok())
    throw Error("quantum_transfer_matrix: " +
                report.violations.front().message);
  if (basis_in.dim != map.in_dim || basis_out.dim != map.out_dim)
    throw Error("quantum_transfer_matrix: basis dimensions do not match map");

  const int k_in = static_cast<int>(basis_in.ops.size());
  const int k_out = static_cast<int>(basis_out.ops.size());
  Eigen::MatrixXd m(k_out, k_in);
  for (int g = 0; g < k_in; ++g) {
    const Eigen::MatrixXcd image = map.apply(basis_in.ops[g]);
    for (int b = 0; b < k_out; ++b)
      m(b, g) = (basis_out.ops[b] * image).trace().real();
  }
  TransferMatrix z;
  z.input = in;
  z.output = out;
  z.z = m * basis_in.gram_inv;
  z.label = std::move(label);
  return z;
}

CPMap choi_from_transfer(const TransferMatrix& z,
                         const QuantumFiducialBasis& basis_in,
                         const QuantumFiducialBasis& basis_out) {
  const int n_in = basis_in.dim;
  const int n_out = basis_out.dim;
  if (z.z.cols() != static_cast<int>(basis_in.ops.size()) ||
      z.z.rows() != static_cast<int>(basis_out.ops.size()))
    throw Error("choi_from_transfer: shape mismatch with bases");

  // Images of the fiducial operators, as coefficient columns over the
  // output basis.
  const Eigen::MatrixXd s = basis_out.gram_inv * z.z * basis_in.gram;

  CPMap map;
  map.in_dim = n_in;
  map.out_dim = n_out;
  map.choi = Eigen::MatrixXcd::Zero(n_in * n_out, n_in * n_out);
  for (int i = 0; i < n_in; ++i)
    for (int j = 0; j < n_in; ++j) {
      // E_ij expanded over the input basis.
      Eigen::VectorXcd t(static_cast<int>(basis_in.ops.size()));
      for (std::size_t a = 0; a < basis_in.ops.size(); ++a)
        t[static_cast<int>(a)] = basis_in.ops[a](j, i);
      Eigen::VectorXcd c = basis_in.gram_inv * t;
      Eigen::MatrixXcd image = Eigen::MatrixXcd::Zero(n_out, n_out);
      for (std::size_t b = 0; b < basis_out.ops.size(); ++b) {
        std::complex<double> w = 0.0;
        for (std::size_t g = 0; g < basis_in.ops.size(); ++g)
          w += s(static_cast<int>(b), static_cast<int>(g)) *
               c[static_cast<int>(g)];
        image += w * basis_out.ops[b];
      }
      map.choi.block(i * n_out, j * n_out, n_out, n_out) = image;
    }
  return map;
}

const std::string& QuantumTheory::name() const {
  static const std::string n = "quantum";
  return n;
}

void QuantumTheory::declare_type(const std::string& label, int n) {
  if (label.empty()) throw Error("wire-type label must be non-empty");
  if (n < 1) throw Error("wire type needs at least one distinguishable state");
  if (types_.count(label)) throw Error("wire type redeclared: " + label);
  types_[label] = n;
  if (!bases_.count(n)) bases_.emplace(n, QuantumFiducialBasis::canonical(n));
  if (!bases_.count(1)) bases_.emplace(1, QuantumFiducialBasis::canonical(1));
}

int QuantumTheory::fiducial_count(const std::string& label) const {
  const int n = distinguishable_count(label);
  return n * n;
}

const QuantumFiducialBasis& QuantumTheory::basis(int dim) const {
  auto it = bases_.find(dim);
  if (it == bases_.end())
    throw Error("no fiducial basis for dimension " + std::to_string(dim));
  return it->second;
}

QuantumFiducialBasis QuantumTheory::system_basis(
    const SystemType& system) const {
  std::vector<const QuantumFiducialBasis*> parts;
  for (const auto& f : system.factors)
    parts.push_back(&basis(distinguishable_count(f)));
  return QuantumFiducialBasis::product(parts);
}

int QuantumTheory::hilbert_dim(const SystemType& system) const {
  int n = 1;
  for (const auto& f : system.factors) n *= distinguishable_count(f);
  return n;
}

EffectVector QuantumTheory::trace_effect(const SystemType& system) const {
  Eigen::RowVectorXd r = Eigen::RowVectorXd::Ones(1);
  for (const auto& f : system.factors) {
    const auto& b = basis(distinguishable_count(f));
    Eigen::VectorXd traces(static_cast<int>(b.ops.size()));
    for (std::size_t a = 0; a < b.ops.size(); ++a)
      traces[static_cast<int>(a)] = b.ops[a].trace().real();
    Eigen::RowVectorXd rf = (b.gram_inv * traces).transpose();
    r = Eigen::kroneckerProduct(r, rf).eval();
  }
  return EffectVector{system, r};
}

StateVector QuantumTheory::closure_state(const std::string& label) const {
  const int n = distinguishable_count(label);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
  rho(0, 0) = 1.0;
  return embed_state(rho, SystemType{label});
}

StateVector QuantumTheory::embed_state(const Eigen::MatrixXcd& rho,
                                       const SystemType& system) const {
  return StateVector{system, system_basis(system).embed(rho)};
}

Eigen::MatrixXcd QuantumTheory::unembed_state(const StateVector& state) const {
  return system_basis(state.system).unembed(state.p);
}

ValidationReport QuantumTheory::validate_transfer(
    const TransferMatrix& z) const {
  ValidationReport report;
  if (z.z.rows() != fiducial_count(z.output) ||
      z.z.cols() != fiducial_count(z.input)) {
    report.violations.push_back(
        {ViolationKind::invalid_transfer,
         "transfer matrix shape does not match its systems", "", {}});
    return report;
  }
  const auto bin = system_basis(z.input);
  const auto bout = system_basis(z.output);
  return choi_from_transfer(z, bin, bout).validate();
}

bool QuantumTheory::is_homogeneous(const StateVector& state) const {
  Eigen::MatrixXcd rho = unembed_state(state);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  const double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
  if (lmax <= 1e-12) return true;  // null state
  int rank = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()[i] > 1e-8 * lmax) ++rank;
  return rank <= 1;
}

std::vector<CPMap> QuantumTheory::make_gate_maps(const GateSpec& gate,
                                                 const SystemType& in,
                                                 const SystemType& out) const {
  const int n_in = hilbert_dim(in);
  const int n_out = hilbert_dim(out);
  auto expect_args = [&](std::size_t n) {
    if (gate.args.size() != n)
      throw Error("gate " + gate.name + ": expected " + std::to_string(n) +
                  " argument(s), got " + std::to_string(gate.args.size()));
  };
  auto unitary = [&](const Eigen::MatrixXcd& u) {
    return std::vector<CPMap>{CPMap::from_kraus(n_in, n_out, {u})};
  };

  if (gate.name == "id") {
    expect_args(0);
    if (in != out) throw Error("gate id: input and output types must match");
    return {CPMap::identity(n_in)};
  }
  if (gate.name == "x" || gate.name == "z" || gate.name == "h") {
    expect_args(0);
    if (in != out || in.size() != 1 || n_in != 2)
      throw Error("gate " + gate.name + ": needs one qubit wire in and out");
    Eigen::MatrixXcd u(2, 2);
    if (gate.name == "x") u << 0, 1, 1, 0;
    if (gate.name == "z") u << 1, 0, 0, -1;
    if (gate.name == "h") {
      const double s = 1.0 / std::sqrt(2.0);
      u << s, s, s, -s;
    }
    return unitary(u);
  }
  if (gate.name == "cnot") {
    expect_args(0);
    if (in != out || in.size() != 2 || n_in != 4)
      throw Error("gate cnot: needs two qubit wires in and out");
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
    u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1.0;
    return unitary(u);
  }
  if (gate.name == "depolarize") {
    expect_args(1);
    const double lambda = detail::arg_real(gate.args[0], "depolarize");
    if (lambda < 0.0 || lambda > 1.0)
      throw Error("gate depolarize: strength outside [0,1]");
    if (in != out || in.size() != 1)
      throw Error("gate depolarize: needs one wire in and out");
    std::vector<Eigen::MatrixXcd> kraus;
    kraus.push_back(std::sqrt(1.0 - lambda) *
                    Eigen::MatrixXcd::Identity(n_in, n_in));
    for (int i = 0; i < n_in; ++i)
      for (int j = 0; j < n_in; ++j) {
        Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n_in, n_in);
        e(i, j) = std::sqrt(lambda / n_in);
        kraus.push_back(std::move(e));
      }
    return {CPMap::from_kraus(n_in, n_in, kraus)};
  }
  if (gate.name == "measure_z") {
    expect_args(0);
    if (in.size() != 1)
      throw Error("gate measure_z: needs exactly one input wire");
    const bool keep = !out.is_null();
    if (keep && in != out)
      throw Error("gate measure_z: output type must match input");
    std::vector<CPMap> maps;
    for (int k = 0; k < n_in; ++k) {
      if (keep) {
        Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(n_in, n_in);
        proj(k, k) = 1.0;
        maps.push_back(CPMap::from_kraus(n_in, n_in, {proj}));
      } else {
        Eigen::MatrixXcd bra = Eigen::MatrixXcd::Zero(1, n_in);
        bra(0, k) = 1.0;
        maps.push_back(CPMap::from_kraus(n_in, 1, {bra}));
      }
    }
    return maps;
  }
  if (gate.name == "prep_ket") {
    expect_args(1);
    if (!in.is_null()) throw Error("gate prep_ket: takes no input wires");
    Eigen::VectorXcd v = detail::arg_cvector(gate.args[0], "prep_ket");
    if (v.size() != n_out)
      throw Error("gate prep_ket: vector length " + std::to_string(v.size()) +
                  ", expected " + std::to_string(n_out));
    if (v.norm() > 1.0 + 1e-10)
      throw Error("gate prep_ket: vector norm above one");
    return {CPMap::from_kraus(1, n_out, {Eigen::MatrixXcd(v)})};
  }
  if (gate.name == "prep_density") {
    expect_args(1);
    if (!in.is_null()) throw Error("gate prep_density: takes no input wires");
    Eigen::MatrixXcd rho = detail::arg_cmatrix(gate.args[0], "prep_density");
    if (rho.rows() != n_out || rho.cols() != n_out)
      throw Error("gate prep_density: matrix dimension mismatch");
    CPMap map;
    map.in_dim = 1;
    map.out_dim = n_out;
    map.choi = rho;
    auto report = map.validate();
    if (!report.ok())
      throw Error("gate prep_density: " + report.violations.front().message);
    return {map};
  }
  if (gate.name == "povm") {
    expect_args(1);
    if (!out.is_null()) throw Error("gate povm: leaves no output wires");
    const auto& list = gate.args[0];
    if (!list.is_array() || list.empty())
      throw Error("gate povm: expected a non-empty list of matrices");
    std::vector<CPMap> maps;
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(n_in, n_in);
    for (const auto& entry : list) {
      Eigen::MatrixXcd e = detail::arg_cmatrix(entry, "povm");
      if (e.rows() != n_in || e.cols() != n_in)
        throw Error("gate povm: element dimension mismatch");
      total += e;
      CPMap map;
      map.in_dim = n_in;
      map.out_dim = 1;
      map.choi = e.transpose();
      auto report = map.validate();
      if (!report.ok())
        throw Error("gate povm: " + report.violations.front().message);
      maps.push_back(std::move(map));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        Eigen::MatrixXcd::Identity(n_in, n_in) - total);
    if (es.eigenvalues().minCoeff() < -kPsdTol)
      throw Error("gate povm: elements sum above the identity");
    return maps;
  }
  throw Error("unknown quantum gate: " + gate.name);
}

std::vector<TransferMatrix> QuantumTheory::make_gate(
    const GateSpec& gate, const SystemType& in, const SystemType& out) const {
  const auto maps = make_gate_maps(gate, in, out);
  const auto bin = system_basis(in);
  const auto bout = system_basis(out);
  std::vector<TransferMatrix> zs;
  for (std::size_t k = 0; k < maps.size(); ++k) {
    std::string label = gate.name;
    if (maps.size() > 1) label += "=" + std::to_string(k);
    zs.push_back(
        quantum_transfer_matrix(maps[k], bin, bout, in, out, label));
  }
  return zs;
}

std::vector<std::string> QuantumTheory::gate_names() const {
  return {"id",        "x",        "z",        "h",           "cnot",
          "depolarize", "measure_z", "prep_ket", "prep_density", "povm"};
}

}  // namespace gptc
