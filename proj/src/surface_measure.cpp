#include "qavg/surface_measure.hpp"

#include <cmath>

namespace qavg {

GridFunction sigma_inverse_ft_direct(const QuadraticSurface& s,
                                     const GridFunction& indicator,
                                     std::uint64_t count) {
  if (count == 0) throw EmptySetError("surface has no points");
  GridFunction out(s.field, s.d, Side::FreqDm);
  out.values() =
      detail::char_transform(*s.field, s.d, indicator.values(), +1) /
      double(count);
  return out;
}

GridFunction sigma_inverse_ft_closed(const QuadraticSurface& s,
                                     std::uint64_t count) {
  if (s.d % 2 != 0)
    throw UnsupportedError("closed form for (d sigma)^vee requires even d");
  const Field& f = *s.field;
  const double q = f.q();

  Complex g1d = 1.0;
  const Complex g1 = f.gauss_sum(f.one());
  for (int i = 0; i < s.d; ++i) g1d *= g1;
  Elem prod = f.one();
  for (Elem c : s.coeffs) prod = f.mul(prod, c);
  const double eta_a = f.eta(prod);

  const Complex common = g1d * (1.0 - 1.0 / q) * eta_a / double(count);
  const Complex at_zero = std::pow(q, s.d - 1) / double(count) + common;
  const Complex off_dual = -g1d * eta_a / (q * double(count));

  GridFunction out(s.field, s.d, Side::FreqDm);
  std::vector<Elem> pt(s.d);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    if (idx == 0) {
      out[idx] = at_zero;
      continue;
    }
    decode_point(f, s.d, idx, pt);
    out[idx] = eval_dual_form(s, pt).idx == 0 ? common : off_dual;
  }
  return out;
}

namespace {

bool surface_is_symmetric(const GridFunction& indicator) {
  const Field& f = indicator.field();
  const int d = indicator.dim();
  std::vector<Elem> pt(d), negpt(d);
  for (std::size_t idx = 0; idx < indicator.size(); ++idx) {
    if (indicator[idx] == 0.0) continue;
    decode_point(f, d, idx, pt);
    for (int i = 0; i < d; ++i) negpt[i] = f.neg(pt[i]);
    if (indicator.at(negpt) == 0.0) return false;
  }
  return true;
}

// Decoded points of the set {indicator != 0}.
std::vector<std::vector<Elem>> support_points(const GridFunction& indicator) {
  std::vector<std::vector<Elem>> pts;
  const int d = indicator.dim();
  std::vector<Elem> pt(d);
  for (std::size_t idx = 0; idx < indicator.size(); ++idx)
    if (indicator[idx] != 0.0) {
      decode_point(indicator.field(), d, idx, pt);
      pts.push_back(pt);
    }
  return pts;
}

}  // namespace

SurfaceData make_surface_data(const QuadraticSurface& s) {
  auto [indicator, count] = enumerate_surface(s);
  auto [dual_indicator_dx, dual_count] = enumerate_surface(dual_surface(s));

  GridFunction sigma = sigma_inverse_ft_direct(s, indicator, count);
  GridFunction kernel = sigma;
  kernel[0] = 0.0;
  GridFunction kernel_hat = inverse_transform(kernel);

  return SurfaceData{s,
                     count,
                     dual_count,
                     surface_is_symmetric(indicator),
                     std::move(indicator),
                     dual_indicator_dx.retagged(Side::FreqDm),
                     std::move(sigma),
                     std::move(kernel),
                     std::move(kernel_hat)};
}

GridFunction average(const GridFunction& f, const SurfaceData& sd,
                     ConvPath path) {
  if (f.side() != Side::SpaceDx)
    throw SideMismatchError("average expects a dx-side grid");
  if (path == ConvPath::Fourier) {
    if (!sd.symmetric)
      throw InternalConsistencyError(
          "Fourier averaging path requires S = -S");
    return inverse_transform(pointwise(forward_transform(f), sd.sigma_check));
  }
  const Field& fld = f.field();
  const int d = f.dim();
  const auto pts = support_points(sd.indicator);
  GridFunction out(f.field_ptr(), d, Side::SpaceDx);
  std::vector<Elem> x(d), shifted(d);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    decode_point(fld, d, idx, x);
    Complex acc = 0.0;
    for (const auto& y : pts) {
      for (int i = 0; i < d; ++i) shifted[i] = fld.sub(x[i], y[i]);
      acc += f.at(shifted);
    }
    out[idx] = acc / double(sd.count);
  }
  return out;
}

GridFunction convolve_khat(const GridFunction& f, const SurfaceData& sd) {
  if (f.side() != Side::SpaceDx)
    throw SideMismatchError("convolve_khat expects a dx-side grid");
  return inverse_transform(pointwise(forward_transform(f), sd.kernel));
}

GridFunction convolve_naive(const GridFunction& f, const GridFunction& g) {
  require_compatible(f, g);
  if (f.side() != Side::SpaceDx)
    throw SideMismatchError("convolve_naive expects dx-side grids");
  const Field& fld = f.field();
  const int d = f.dim();
  const std::size_t n = f.size();
  GridFunction out(f.field_ptr(), d, Side::SpaceDx);
  std::vector<Elem> x(d), y(d), diff(d);
  for (std::size_t xi = 0; xi < n; ++xi) {
    decode_point(fld, d, xi, x);
    Complex acc = 0.0;
    for (std::size_t yi = 0; yi < n; ++yi) {
      if (g[yi] == 0.0) continue;
      decode_point(fld, d, yi, y);
      for (int i = 0; i < d; ++i) diff[i] = fld.sub(x[i], y[i]);
      acc += f.at(diff) * g[yi];
    }
    out[xi] = acc / double(n);
  }
  return out;
}

}  // namespace qavg
