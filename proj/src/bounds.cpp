#include "qavg/bounds.hpp"

#include <cmath>

namespace qavg {

const char* kernel_norm_name(KernelNormKind k) {
  switch (k) {
    case KernelNormKind::LInf: return "linf";
    case KernelNormKind::L2: return "l2";
    default: return "lcrit";
  }
}

std::string coeff_pattern_string(const QuadraticSurface& s) {
  const std::uint32_t p = s.field->p();
  std::string out;
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
    if (i) out += ';';
    const std::uint32_t idx = s.coeffs[i].idx;
    if (idx < p && idx > p / 2)
      out += std::to_string(std::int64_t(idx) - std::int64_t(p));
    else
      out += std::to_string(idx);
  }
  return out;
}

BoundReport kernel_norm_bound_check(const GridFunction& E,
                                    const SurfaceData& sd,
                                    KernelNormKind kind) {
  const int d = sd.surface.d;
  const double q = sd.surface.field->q();
  if (d % 2 != 0)
    throw UnsupportedError("kernel-norm lemma requires even d");
  if (kind == KernelNormKind::LCrit && d < 4)
    throw UnsupportedError("critical kernel bound requires d >= 4");

  const auto size = std::uint64_t(std::llround(E.values().real().sum()));
  if (size == 0) throw EmptySetError("empty set E");
  const Regime regime = regime_classify(d, sd.surface.field->q(), size);
  const double es = double(size);

  const GridFunction conv = convolve_khat(E, sd);
  double lhs = 0.0, rhs = 0.0;
  switch (kind) {
    case KernelNormKind::LInf:
      lhs = lp_norm(conv, kInfExponent);
      rhs = std::pow(q, -d + 1) * es;
      break;
    case KernelNormKind::L2:
      lhs = lp_norm(conv, 2.0);
      switch (regime) {
        case Regime::J1: rhs = std::pow(q, (-2.0 * d + 1) / 2) * std::sqrt(es); break;
        case Regime::J2: rhs = std::pow(q, (-5.0 * d + 4) / 4) * es; break;
        case Regime::J3: rhs = std::pow(q, -d + 1.0) * std::sqrt(es); break;
      }
      break;
    case KernelNormKind::LCrit:
      if (d == 4) {
        lhs = lp_norm(conv, 6.0);
        switch (regime) {
          case Regime::J1: rhs = std::pow(q, -19.0 / 6) * std::pow(es, 5.0 / 6); break;
          case Regime::J2: rhs = std::pow(q, -10.0 / 3) * es; break;
          case Regime::J3: rhs = std::pow(q, -3.0) * std::pow(es, 5.0 / 6); break;
        }
      } else {
        lhs = lp_norm(conv, (d - 1) / 2.0);
        const double dd = d;
        const double frac = (dd - 3) / (dd - 1);
        switch (regime) {
          case Regime::J1:
            rhs = std::pow(q, (-dd * dd + 2 * dd - 3) / (dd - 1)) * std::pow(es, frac);
            break;
          case Regime::J2:
            rhs = std::pow(q, (-dd * dd + dd - 1) / (dd - 1)) * es;
            break;
          case Regime::J3:
            rhs = std::pow(q, -dd + 1) * std::pow(es, frac);
            break;
        }
      }
      break;
  }

  BoundReport report;
  report.q = sd.surface.field->q();
  report.d = d;
  report.coeffs = coeff_pattern_string(sd.surface);
  report.experiment = kernel_norm_name(kind);
  report.size = size;
  report.regime = regime_name(regime);
  report.lhs = lhs;
  report.rhs = rhs;
  report.constant = lhs / rhs;
  return report;
}

KernelL2Split kernel_l2_split(const GridFunction& E, const SurfaceData& sd) {
  const int d = sd.surface.d;
  if (d % 2 != 0) throw UnsupportedError("kernel L^2 split requires even d");
  const double q = sd.surface.field->q();

  const GridFunction ehat = forward_transform(E);
  KernelL2Split split;
  double on = 0.0, off = 0.0;
  for (std::size_t m = 1; m < ehat.size(); ++m) {
    const double a2 = std::norm(ehat[m]);
    if (sd.dual_indicator[m] != 0.0)
      on += a2;
    else
      off += a2;
    split.exact += a2 * std::norm(sd.kernel[m]);
  }
  split.on_dual = on * std::pow(q, -(d - 2.0));
  split.off_dual = off * std::pow(q, -double(d));
  return split;
}

double fit_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw RangeError("slope fit needs at least two points");
  const auto n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace qavg
