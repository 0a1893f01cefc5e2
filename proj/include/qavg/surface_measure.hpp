#pragma once

#include "qavg/quadric.hpp"
#include "qavg/transform.hpp"

namespace qavg {

/// (d sigma)^vee(m) = |S|^{-1} sum_{x in S} chi(m.x), computed from the
/// enumerated surface (works for any d).
GridFunction sigma_inverse_ft_direct(const QuadraticSurface& s,
                                     const GridFunction& indicator,
                                     std::uint64_t count);

/// Gauss-sum closed form for (d sigma)^vee, even d; the three cases are
/// selected by the dual form value at m.
GridFunction sigma_inverse_ft_closed(const QuadraticSurface& s,
                                     std::uint64_t count);

/// Frequency-side package derived from one surface.
struct SurfaceData {
  QuadraticSurface surface;
  std::uint64_t count = 0;       // |S|
  std::uint64_t dual_count = 0;  // |S_a|
  bool symmetric = false;        // S == -S, checked at build
  GridFunction indicator;        // SpaceDx, {0,1}
  GridFunction dual_indicator;   // FreqDm, zero set of the dual form
  GridFunction sigma_check;      // FreqDm, (d sigma)^vee
  GridFunction kernel;           // FreqDm, K = (d sigma)^vee - delta_0
  GridFunction kernel_hat;       // SpaceDx, K^
};

SurfaceData make_surface_data(const QuadraticSurface& s);

enum class ConvPath { Naive, Fourier };

/// Af = f * d sigma = |S|^{-1} sum_{y in S} f(x - y). The Fourier path
/// multiplies f^ by (d sigma)^vee, which drops the measure reflection using
/// S = -S (checked when the SurfaceData was built).
GridFunction average(const GridFunction& f, const SurfaceData& sd,
                     ConvPath path = ConvPath::Fourier);

/// f * K^ = inverse_transform(f^ . K); equals average(f) - mean(f).
GridFunction convolve_khat(const GridFunction& f, const SurfaceData& sd);

/// Literal normalized convolution q^{-d} sum_y f(x-y) g(y) (dx side both);
/// the oracle path for convolution identities.
GridFunction convolve_naive(const GridFunction& f, const GridFunction& g);

}  // namespace qavg
