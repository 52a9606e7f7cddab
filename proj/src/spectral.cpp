#include "rieszlab/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace rieszlab {

namespace {
Complex ipow(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}
}  // namespace

GridField apply_multiplier(const GridField& in, int out_dim,
                           const std::function<CMat(const RVec&)>& fn,
                           bool zero_out_zero_mode) {
  const auto& dims = in.resolution();
  std::vector<CVec> hat(in.value_dim());
  for (int c = 0; c < in.value_dim(); ++c) {
    hat[c] = in.comp(c);
    fft_forward(dims, hat[c]);
  }
  GridField out(in.box(), dims, out_dim, in.padding_factor());
  std::vector<CVec> ohat(out_dim, CVec::Zero(in.total()));
  CVec vin(in.value_dim());
  for (std::size_t idx = 0; idx < in.total(); ++idx) {
    RVec xi = in.frequency(idx);
    if (xi.norm() == 0.0 && zero_out_zero_mode) continue;
    CMat M = fn(xi);
    for (int c = 0; c < in.value_dim(); ++c) vin[c] = hat[c][idx];
    CVec vout = M * vin;
    for (int c = 0; c < out_dim; ++c) ohat[c][idx] = vout[c];
  }
  for (int c = 0; c < out_dim; ++c) {
    fft_inverse(dims, ohat[c]);
    out.comp(c) = std::move(ohat[c]);
  }
  return out;
}

GridField apply_operator(const HomogeneousOperator& op, const GridField& u) {
  if (u.value_dim() != op.dimE() || u.dim_N() != op.dim_N())
    throw std::invalid_argument("apply_operator: grid/operator dimension mismatch");
  Complex phase = ipow(op.order_m());
  return apply_multiplier(
      u, op.dimF(), [&](const RVec& xi) { return CMat(phase * op.symbol_at(xi)); }, false);
}

GridField apply_adjoint(const HomogeneousOperator& op, const GridField& f) {
  if (f.value_dim() != op.dimF() || f.dim_N() != op.dim_N())
    throw std::invalid_argument("apply_adjoint: grid/operator dimension mismatch");
  Complex phase = std::conj(ipow(op.order_m()));
  return apply_multiplier(
      f, op.dimE(), [&](const RVec& xi) { return CMat(phase * op.adjoint_symbol_at(xi)); },
      false);
}

GridField riesz_transform(const GridField& f, const MultiIndex& alpha) {
  int k = alpha.order();
  if (k < 1) throw std::invalid_argument("riesz_transform: |alpha| must be >= 1");
  Complex phase = std::conj(ipow(k));  // (-i)^k
  return apply_multiplier(
      f, f.value_dim(),
      [&](const RVec& xi) {
        double s = monomial(alpha, xi.data()) / std::pow(xi.norm(), k);
        return CMat(phase * s * CMat::Identity(f.value_dim(), f.value_dim()));
      },
      true);
}

GridField riesz_multiplier(const GridField& f, double m) {
  return apply_multiplier(
      f, f.value_dim(),
      [&](const RVec& xi) {
        return CMat(std::pow(xi.norm(), -m) * CMat::Identity(f.value_dim(), f.value_dim()));
      },
      true);
}

GridField fractional_laplacian(const GridField& f, double s) {
  if (s == 0.0) return f;
  return apply_multiplier(
      f, f.value_dim(),
      [&](const RVec& xi) {
        return CMat(std::pow(xi.norm(), s) * CMat::Identity(f.value_dim(), f.value_dim()));
      },
      true);
}

GridField derivative_tuple(const GridField& u, int k) {
  if (k == 0) return u;
  auto betas = multi_indices_of_order(u.dim_N(), k);
  int nb = static_cast<int>(betas.size());
  int vd = u.value_dim();
  Complex phase = ipow(k);
  return apply_multiplier(
      u, vd * nb,
      [&](const RVec& xi) {
        CMat M = CMat::Zero(vd * nb, vd);
        for (int b = 0; b < nb; ++b) {
          Complex s = phase * monomial(betas[b], xi.data());
          for (int c = 0; c < vd; ++c) M(b * vd + c, c) = s;
        }
        return M;
      },
      false);
}

}  // namespace rieszlab
