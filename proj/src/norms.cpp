#include "qavg/norms.hpp"

#include <cmath>

namespace qavg {

double lp_norm(const GridFunction& g, double p) {
  if (!(p >= 1.0)) throw RangeError("L^p norm requires p >= 1");
  const auto abs_values = g.values().cwiseAbs();
  if (p == kInfExponent) return abs_values.maxCoeff();
  double sum;
  if (p == 1.0)
    sum = abs_values.sum();
  else if (p == 2.0)
    sum = abs_values.array().square().sum();
  else
    sum = abs_values.array().pow(p).sum();
  if (g.side() == Side::SpaceDx) sum /= double(g.size());
  return std::pow(sum, 1.0 / p);
}

double averaging_ratio(const GridFunction& f, const SurfaceData& sd, double p,
                       double r) {
  const double denom = lp_norm(f, p);
  if (denom == 0.0) throw ZeroFunctionError("averaging ratio of the zero function");
  return lp_norm(average(f, sd), r) / denom;
}

}  // namespace qavg
