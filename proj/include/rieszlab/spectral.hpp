#pragma once

#include "rieszlab/grid.hpp"
#include "rieszlab/operator.hpp"

namespace rieszlab {

/// Applies a Fourier multiplier xi -> M(xi) (out_dim x in_dim matrix) to a
/// grid field: out^(xi) = M(xi) in^(xi) per mode. With zero_out_zero_mode the
/// zero mode is dropped (the convention for singular multipliers).
GridField apply_multiplier(const GridField& in, int out_dim,
                           const std::function<CMat(const RVec&)>& fn,
                           bool zero_out_zero_mode);

/// A(D)u by Fourier-side multiplication with A(i xi) = i^m A(xi).
GridField apply_operator(const HomogeneousOperator& op, const GridField& u);

/// A*(D)f with the same convention (symbol conj(i^m) A(xi)^H).
GridField apply_adjoint(const HomogeneousOperator& op, const GridField& f);

/// alpha-order Riesz transform: multiplier (-i)^{|alpha|} xi^alpha / |xi|^{|alpha|},
/// zero mode 0. With this sign convention R_{e1} cos(x1) = sin(x1).
GridField riesz_transform(const GridField& f, const MultiIndex& alpha);

/// Riesz potential on the torus: multiplier |xi|^{-m} on nonzero modes.
GridField riesz_multiplier(const GridField& f, double m);

/// Spectral fractional Laplacian (-Delta)^{s/2}: multiplier |xi|^s, zero mode 0
/// for s > 0 (and passed through for s = 0).
GridField fractional_laplacian(const GridField& f, double s);

/// Tuple of all partial derivatives d^beta u for |beta| = k, stacked over the
/// value components of u (output value_dim = u.value_dim * #beta).
GridField derivative_tuple(const GridField& u, int k);

}  // namespace rieszlab
