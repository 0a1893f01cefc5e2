#pragma once

#include <string>

#include "qavg/levelset.hpp"
#include "qavg/norms.hpp"

namespace qavg {

/// One experiment row: the computed left/right sides of an inequality and
/// the empirical constant. The pass flag is applied by the caller's ceiling.
struct BoundReport {
  std::uint32_t q = 0;
  int d = 0;
  std::string coeffs;
  std::string experiment;
  std::string family;
  std::uint64_t size = 0;
  std::string regime;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
};

/// Which side of the kernel-norm lemma to certify: the L^infty Young bound,
/// the three-regime L^2 bound, or the critical-exponent bound (L^6 for
/// d = 4, L^{(d-1)/2} for d >= 6).
enum class KernelNormKind { LInf, L2, LCrit };
const char* kernel_norm_name(KernelNormKind k);

/// Computes lhs = ||E * K^|| in the indicated norm on the dx side, selects
/// the regime-matched rhs, and reports C = lhs/rhs (no assertion inside).
BoundReport kernel_norm_bound_check(const GridFunction& E,
                                    const SurfaceData& sd, KernelNormKind kind);

/// Frequency-side split of ||E * K^||^2_{L^2}:
///   on_dual  = q^{-(d-2)} sum_{m != 0, dual form = 0} |E^(m)|^2
///   off_dual = q^{-d}     sum_{m != 0, dual form != 0} |E^(m)|^2
/// exact keeps |K(m)|^2 in place of the regime weights, so it equals
/// ||E * K^||^2_{L^2(dx)} by Plancherel.
struct KernelL2Split {
  double on_dual = 0.0;
  double off_dual = 0.0;
  double exact = 0.0;
};

KernelL2Split kernel_l2_split(const GridFunction& E, const SurfaceData& sd);

/// Least-squares slope of log(y) against log(x).
double fit_log_slope(std::span<const double> x, std::span<const double> y);

std::string coeff_pattern_string(const QuadraticSurface& s);

}  // namespace qavg
