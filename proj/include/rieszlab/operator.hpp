#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>

#include "rieszlab/multi_index.hpp"

namespace rieszlab {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

/// Homogeneous constant-coefficient operator A(D) = sum_{|alpha|=m} a_alpha d^alpha
/// from E = C^dimE to F = C^dimF on R^N.
class HomogeneousOperator {
 public:
  HomogeneousOperator(int dim_N, int order_m, int dimE, int dimF,
                      std::map<MultiIndex, CMat> coeffs);

  int dim_N() const { return dim_N_; }
  int order_m() const { return order_m_; }
  int dimE() const { return dimE_; }
  int dimF() const { return dimF_; }
  const std::map<MultiIndex, CMat>& coeffs() const { return coeffs_; }

  /// Symbol A(xi) = sum a_alpha xi^alpha, a dimF x dimE matrix.
  CMat symbol_at(const RVec& xi) const;

  /// Symbol of the adjoint: conjugate transpose of A(xi), dimE x dimF.
  CMat adjoint_symbol_at(const RVec& xi) const;

  /// Formal adjoint A*(D) as an operator in its own right, from F to E.
  /// Its symbol at xi (with the d^alpha -> (i xi)^alpha convention) is
  /// conj(i^m) * adjoint_symbol_at(xi).
  HomogeneousOperator adjoint() const;

 private:
  int dim_N_, order_m_, dimE_, dimF_;
  std::map<MultiIndex, CMat> coeffs_;
};

/// Thrown by parse_operator on malformed documents.
struct OperatorParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Small catalog of operators used across tests and the CLI.
namespace catalog {

/// Gradient: E = C, F = C^N, a_{e_j} = e_j.
HomogeneousOperator gradient(int N);

/// Divergence: F = C^N -> V = C, L(xi) e = xi . e.
HomogeneousOperator divergence(int N);

/// Laplacian: E = F = C, A(xi) = |xi|^2.
HomogeneousOperator laplacian(int N);

/// Single partial d_j: E = F = C.
HomogeneousOperator partial(int N, int j);

/// Total derivative D^m: E = C, F = C^{#(|alpha|=m)}, one row per alpha.
HomogeneousOperator total_derivative(int N, int m);

/// N=2 rotation annihilator: L(xi) f = xi_1 f_2 - xi_2 f_1, F = C^2 -> V = C.
HomogeneousOperator curl2();

/// N=3 cross product L(xi) f = xi x f, F = C^3 -> V = C^3.
HomogeneousOperator curl3();

}  // namespace catalog

}  // namespace rieszlab
