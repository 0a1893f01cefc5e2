#pragma once

#include "qavg/grid.hpp"

namespace qavg {

/// Fourier transform with the dx-side convention:
///   f^(m) = q^{-d} sum_x f(x) chi(-x.m),  SpaceDx -> FreqDm.
GridFunction forward_transform(const GridFunction& f);

/// Transform back with the dm-side counting measure:
///   g -> (x -> sum_m g(m) chi(m.x)),  FreqDm -> SpaceDx.
/// Exact inverse of forward_transform; delta_0 maps to the constant 1.
GridFunction inverse_transform(const GridFunction& g);

/// O(q^{2d}) double-sum references. These stay independent of the tensor
/// path and serve as its oracle.
GridFunction naive_forward_transform(const GridFunction& f);
GridFunction naive_inverse_transform(const GridFunction& g);

namespace detail {

/// Unnormalized character transform out(m) = sum_x v(x) chi(sign * x.m).
/// Computed as n*d length-p digit transforms followed by the trace-pairing
/// permutation; falls back to the double sum if the pairing bookkeeping is
/// degenerate (it never is for the separable extensions in scope).
CVec char_transform(const Field& f, int d, const CVec& v, int sign);
CVec naive_char_transform(const Field& f, int d, const CVec& v, int sign);

}  // namespace detail
}  // namespace qavg
