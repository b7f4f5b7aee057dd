#pragma once

// Decoding of JSON-typed gate arguments: reals, complex [re, im] pairs,
// vectors and row-major matrices of either.

#include <Eigen/Dense>
#include <complex>
#include <nlohmann/json.hpp>

#include "gptc/error.hpp"

namespace gptc::detail {

inline double arg_real(const nlohmann::json& j, const char* what) {
  if (!j.is_number()) throw Error(std::string(what) + ": expected a number");
  return j.get<double>();
}

inline int arg_int(const nlohmann::json& j, const char* what) {
  if (!j.is_number_integer())
    throw Error(std::string(what) + ": expected an integer");
  return j.get<int>();
}

inline std::complex<double> arg_complex(const nlohmann::json& j,
                                        const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw Error(std::string(what) + ": expected a number or [re, im] pair");
}

inline Eigen::VectorXcd arg_cvector(const nlohmann::json& j,
                                    const char* what) {
  if (!j.is_array() || j.empty())
    throw Error(std::string(what) + ": expected a non-empty array");
  Eigen::VectorXcd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = arg_complex(j[i], what);
  return v;
}

inline Eigen::MatrixXcd arg_cmatrix(const nlohmann::json& j,
                                    const char* what) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
    throw Error(std::string(what) + ": expected a non-empty matrix");
  const std::size_t rows = j.size(), cols = j[0].size();
  Eigen::MatrixXcd m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw Error(std::string(what) + ": ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = arg_complex(j[r][c], what);
  }
  return m;
}

inline Eigen::MatrixXd arg_rmatrix(const nlohmann::json& j, const char* what) {
  Eigen::MatrixXcd m = arg_cmatrix(j, what);
  if (m.imag().cwiseAbs().maxCoeff() > 0.0)
    throw Error(std::string(what) + ": expected a real matrix");
  return m.real();
}

}  // namespace gptc::detail
