#include "rieszlab/operator.hpp"

#include <cmath>

namespace rieszlab {

std::vector<MultiIndex> multi_indices_of_order(int N, int order) {
  std::vector<MultiIndex> out;
  std::vector<int> cur(N, 0);
  // lexicographic enumeration by recursion on the first entry
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == N - 1) {
      cur[pos] = remaining;
      out.emplace_back(cur);
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      cur[pos] = k;
      self(self, pos + 1, remaining - k);
    }
  };
  rec(rec, 0, order);
  return out;
}

double monomial(const MultiIndex& alpha, const double* xi) {
  double v = 1.0;
  for (int i = 0; i < alpha.dim(); ++i)
    for (int k = 0; k < alpha[i]; ++k) v *= xi[i];
  return v;
}

HomogeneousOperator::HomogeneousOperator(int dim_N, int order_m, int dimE, int dimF,
                                         std::map<MultiIndex, CMat> coeffs)
    : dim_N_(dim_N), order_m_(order_m), dimE_(dimE), dimF_(dimF), coeffs_(std::move(coeffs)) {
  if (dim_N_ < 2) throw OperatorParseError("operator: N must be >= 2");
  if (order_m_ < 1) throw OperatorParseError("operator: order m must be >= 1");
  if (dimE_ < 1 || dimF_ < 1) throw OperatorParseError("operator: dimE, dimF must be positive");
  bool any_nonzero = false;
  for (const auto& [alpha, a] : coeffs_) {
    if (alpha.dim() != dim_N_) throw OperatorParseError("operator: multi-index dimension mismatch");
    if (alpha.order() != order_m_) throw OperatorParseError("operator: inhomogeneous term");
    if (a.rows() != dimF_ || a.cols() != dimE_)
      throw OperatorParseError("operator: coefficient matrix shape mismatch");
    if (a.cwiseAbs().maxCoeff() > 0) any_nonzero = true;
  }
  if (!any_nonzero) throw OperatorParseError("operator: all coefficients zero");
}

CMat HomogeneousOperator::symbol_at(const RVec& xi) const {
  CMat s = CMat::Zero(dimF_, dimE_);
  for (const auto& [alpha, a] : coeffs_) s += a * monomial(alpha, xi.data());
  return s;
}

CMat HomogeneousOperator::adjoint_symbol_at(const RVec& xi) const {
  return symbol_at(xi).adjoint();
}

HomogeneousOperator HomogeneousOperator::adjoint() const {
  // A*(D) = (-1)^m sum a_alpha^H d^alpha, from F to E.
  double sign = (order_m_ % 2 == 0) ? 1.0 : -1.0;
  std::map<MultiIndex, CMat> adj;
  for (const auto& [alpha, a] : coeffs_) adj[alpha] = sign * a.adjoint();
  return HomogeneousOperator(dim_N_, order_m_, dimF_, dimE_, std::move(adj));
}

namespace catalog {

HomogeneousOperator gradient(int N) {
  std::map<MultiIndex, CMat> c;
  for (int j = 0; j < N; ++j) {
    CMat a = CMat::Zero(N, 1);
    a(j, 0) = 1.0;
    c[MultiIndex::unit(N, j)] = a;
  }
  return HomogeneousOperator(N, 1, 1, N, std::move(c));
}

HomogeneousOperator divergence(int N) {
  std::map<MultiIndex, CMat> c;
  for (int j = 0; j < N; ++j) {
    CMat a = CMat::Zero(1, N);
    a(0, j) = 1.0;
    c[MultiIndex::unit(N, j)] = a;
  }
  return HomogeneousOperator(N, 1, N, 1, std::move(c));
}

HomogeneousOperator laplacian(int N) {
  std::map<MultiIndex, CMat> c;
  for (int j = 0; j < N; ++j) {
    std::vector<int> e(N, 0);
    e[j] = 2;
    c[MultiIndex(e)] = CMat::Constant(1, 1, 1.0);
  }
  return HomogeneousOperator(N, 2, 1, 1, std::move(c));
}

HomogeneousOperator partial(int N, int j) {
  std::map<MultiIndex, CMat> c;
  c[MultiIndex::unit(N, j)] = CMat::Constant(1, 1, 1.0);
  return HomogeneousOperator(N, 1, 1, 1, std::move(c));
}

HomogeneousOperator total_derivative(int N, int m) {
  auto alphas = multi_indices_of_order(N, m);
  int dF = static_cast<int>(alphas.size());
  std::map<MultiIndex, CMat> c;
  for (int r = 0; r < dF; ++r) {
    CMat a = CMat::Zero(dF, 1);
    a(r, 0) = 1.0;
    c[alphas[r]] = a;
  }
  return HomogeneousOperator(N, m, 1, dF, std::move(c));
}

HomogeneousOperator curl2() {
  std::map<MultiIndex, CMat> c;
  CMat a1 = CMat::Zero(1, 2), a2 = CMat::Zero(1, 2);
  a1(0, 1) = 1.0;   // xi_1 f_2
  a2(0, 0) = -1.0;  // - xi_2 f_1
  c[MultiIndex::unit(2, 0)] = a1;
  c[MultiIndex::unit(2, 1)] = a2;
  return HomogeneousOperator(2, 1, 2, 1, std::move(c));
}

HomogeneousOperator curl3() {
  // (xi x f)_i = eps_{ijk} xi_j f_k
  std::map<MultiIndex, CMat> c;
  for (int j = 0; j < 3; ++j) c[MultiIndex::unit(3, j)] = CMat::Zero(3, 3);
  auto& cx = c[MultiIndex::unit(3, 0)];
  cx(1, 2) = -1.0; cx(2, 1) = 1.0;
  auto& cy = c[MultiIndex::unit(3, 1)];
  cy(0, 2) = 1.0; cy(2, 0) = -1.0;
  auto& cz = c[MultiIndex::unit(3, 2)];
  cz(0, 1) = -1.0; cz(1, 0) = 1.0;
  return HomogeneousOperator(3, 1, 3, 3, std::move(c));
}

}  // namespace catalog

}  // namespace rieszlab
