#include "gptc/counting.hpp"

#include <Eigen/Dense>
#include <random>
#include <unsupported/Eigen/KroneckerProduct>

#include "gptc/error.hpp"
#include "gptc/quantum.hpp"

namespace gptc {

CountingModel counting_model_from_name(const std::string& name) {
  if (name == "classical") return CountingModel::classical;
  if (name == "quantum") return CountingModel::quantum;
  if (name == "real-quantum" || name == "real")
    return CountingModel::real_quantum;
  if (name == "quaternionic" || name == "quaternionic-quantum")
    return CountingModel::quaternionic_quantum;
  throw Error("unknown counting model: " + name);
}

const char* to_string(CountingModel model) {
  switch (model) {
    case CountingModel::classical: return "classical";
    case CountingModel::quantum: return "quantum";
    case CountingModel::real_quantum: return "real-quantum";
    case CountingModel::quaternionic_quantum: return "quaternionic";
  }
  return "?";
}

std::int64_t counting_K(CountingModel model, int n) {
  if (n < 1) throw Error("counting_K: N must be positive");
  const std::int64_t nn = n;
  switch (model) {
    case CountingModel::classical:
      return nn;
    case CountingModel::quantum:
      return nn * nn;
    case CountingModel::real_quantum:
      return nn + nn * (nn - 1) / 2;
    case CountingModel::quaternionic_quantum:
      return nn + 2 * nn * (nn - 1);
  }
  throw Error("counting_K: bad model");
}

CompositeCountingReport composite_counting_check(CountingModel model, int n_a,
                                                 int n_b) {
  CompositeCountingReport report;
  report.model = model;
  report.n_a = n_a;
  report.n_b = n_b;
  report.k_a = counting_K(model, n_a);
  report.k_b = counting_K(model, n_b);
  report.k_ab = counting_K(model, n_a * n_b);
  const std::int64_t product = report.k_a * report.k_b;
  report.relation =
      report.k_ab < product ? '<' : (report.k_ab > product ? '>' : '=');
  report.bound_satisfied = report.k_ab >= product;
  report.locally_tomographic = report.k_ab == product;
  return report;
}

namespace {

Eigen::MatrixXcd random_density(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = {gauss(rng), gauss(rng)};
  Eigen::MatrixXcd rho = g * g.adjoint();
  return rho / rho.trace().real();
}

Eigen::MatrixXd random_real_symmetric_psd(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = gauss(rng);
  Eigen::MatrixXd rho = g * g.transpose();
  return rho / rho.trace();
}

// Coordinates of a real symmetric matrix over the orthonormal symmetric
// basis {E_ii} + {(E_ij + E_ji)/sqrt2}.
Eigen::VectorXd symmetric_coordinates(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  Eigen::VectorXd v(n + n * (n - 1) / 2);
  int k = 0;
  for (int i = 0; i < n; ++i) v[k++] = m(i, i);
  const double s = std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) v[k++] = s * m(i, j);
  return v;
}

int numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] <= 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > rel_tol * sv[0]) ++rank;
  return rank;
}

}  // namespace

int product_state_span_rank(CountingModel model, int n_a, int n_b,
                            int sample_count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<Eigen::VectorXd> columns;

  for (int s = 0; s < sample_count; ++s) {
    switch (model) {
      case CountingModel::classical: {
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        auto simplex = [&](int n) {
          Eigen::VectorXd p(n);
          double total = 0.0;
          for (int i = 0; i < n; ++i) total += (p[i] = -std::log(uni(rng)));
          return (p / total).eval();
        };
        columns.push_back(
            Eigen::kroneckerProduct(simplex(n_a), simplex(n_b)).eval());
        break;
      }
      case CountingModel::quantum: {
        const auto ba = QuantumFiducialBasis::canonical(n_a);
        const auto bb = QuantumFiducialBasis::canonical(n_b);
        Eigen::VectorXd pa = ba.embed(random_density(n_a, rng));
        Eigen::VectorXd pb = bb.embed(random_density(n_b, rng));
        columns.push_back(Eigen::kroneckerProduct(pa, pb).eval());
        break;
      }
      case CountingModel::real_quantum: {
        Eigen::MatrixXd rho_a = random_real_symmetric_psd(n_a, rng);
        Eigen::MatrixXd rho_b = random_real_symmetric_psd(n_b, rng);
        Eigen::MatrixXd joint = Eigen::kroneckerProduct(rho_a, rho_b);
        columns.push_back(symmetric_coordinates(joint));
        break;
      }
      case CountingModel::quaternionic_quantum:
        throw Error("product_state_span_rank: quaternionic model has no "
                    "state representation here");
    }
  }

  Eigen::MatrixXd span(columns.front().size(),
                       static_cast<int>(columns.size()));
  for (std::size_t i = 0; i < columns.size(); ++i)
    span.col(static_cast<int>(i)) = columns[i];
  return numerical_rank(span, 1e-8);
}

}  // namespace gptc
