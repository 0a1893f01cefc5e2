#pragma once

#include <limits>

#include "qavg/surface_measure.hpp"

namespace qavg {

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

/// L^p norm under the grid's measure convention: (q^{-d} sum |f|^p)^{1/p} on
/// the dx side, (sum |g|^p)^{1/p} on the dm side; p = kInfExponent gives the
/// sup norm. Throws on p < 1.
double lp_norm(const GridFunction& g, double p);

/// ||f * d sigma||_{L^r(dx)} / ||f||_{L^p(dx)}; throws ZeroFunctionError on
/// an identically zero f.
double averaging_ratio(const GridFunction& f, const SurfaceData& sd, double p,
                       double r);

}  // namespace qavg
