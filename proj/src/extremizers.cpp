#include "qavg/extremizers.hpp"

#include <algorithm>
#include <cmath>

namespace qavg {

FamilySpec parse_family(const std::string& text) {
  std::string name = text;
  std::uint64_t param = 0;
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    name = text.substr(0, colon);
    try {
      param = std::stoull(text.substr(colon + 1));
    } catch (const std::logic_error&) {
      throw ConfigError("bad family parameter in '" + text + "'");
    }
  }
  if (name == "delta") return {FamilyKind::Delta, param};
  if (name == "subspace") return {FamilyKind::Subspace, param};
  if (name == "random_set") return {FamilyKind::RandomSet, param};
  if (name == "dyadic_random")
    return {FamilyKind::DyadicRandom, param == 0 ? 4 : param};
  if (name == "sublevel") return {FamilyKind::Sublevel, param == 0 ? 1 : param};
  throw ConfigError("unknown family '" + text + "'");
}

std::string family_name(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::Delta: return "delta";
    case FamilyKind::Subspace: return "subspace";
    case FamilyKind::RandomSet:
      return "random_set:" + std::to_string(spec.param);
    case FamilyKind::DyadicRandom:
      return "dyadic_random:" + std::to_string(spec.param);
    default: return "sublevel:" + std::to_string(spec.param);
  }
}

GridFunction make_extremizer(const FamilySpec& spec, const SurfaceData& sd,
                             const std::optional<IsotropicSubspace>& subspace,
                             std::uint64_t seed) {
  const QuadraticSurface& s = sd.surface;
  const std::size_t n = sd.indicator.size();
  switch (spec.kind) {
    case FamilyKind::Delta: {
      GridFunction g(s.field, s.d, Side::SpaceDx);
      g[0] = 1.0;
      return g;
    }
    case FamilyKind::Subspace: {
      if (!subspace)
        throw HypothesisError(
            "subspace extremizer requires a hyperbolic surface");
      return subspace_indicator(s, *subspace);
    }
    case FamilyKind::RandomSet: {
      const std::uint64_t size = std::clamp<std::uint64_t>(spec.param, 1, n);
      DetRng rng(seed);
      const auto idx = rng.sample_indices(n, std::size_t(size));
      return indicator_from_indices(s.field, s.d, Side::SpaceDx, idx);
    }
    case FamilyKind::DyadicRandom: {
      const int levels = int(std::clamp<std::uint64_t>(spec.param, 1, 30));
      DetRng rng(seed);
      std::vector<std::size_t> sizes(levels);
      std::size_t total = 0;
      for (int k = 0; k < levels; ++k) {
        const std::size_t cap = std::max<std::size_t>(1, n >> (k + 2));
        sizes[k] = 1 + std::size_t(rng.below(cap));
        total += sizes[k];
      }
      const auto idx = rng.sample_indices(n, total);
      GridFunction g(s.field, s.d, Side::SpaceDx);
      std::size_t off = 0;
      for (int k = 0; k < levels; ++k) {
        const double v = std::pow(2.0, -k);
        for (std::size_t t = 0; t < sizes[k]; ++t) g[idx[off + t]] = v;
        off += sizes[k];
      }
      return g;
    }
    default: {  // Sublevel
      const std::uint64_t count =
          std::clamp<std::uint64_t>(spec.param, 1, s.field->q());
      GridFunction g(s.field, s.d, Side::SpaceDx);
      std::vector<Elem> pt(s.d);
      for (std::size_t i = 0; i < n; ++i) {
        decode_point(*s.field, s.d, i, pt);
        if (eval_form(s, pt).idx < count) g[i] = 1.0;
      }
      return g;
    }
  }
}

std::optional<IsotropicSubspace> find_isotropic_subspace(
    const QuadraticSurface& s) {
  try {
    return isotropic_subspace(s, SubspaceMode::Construct);
  } catch (const NoConstructivePatternError&) {
    return isotropic_subspace(s, SubspaceMode::Search);
  }
}

SharpnessReport sharpness_probe(int d, std::span<const std::int64_t> pattern,
                                const RatPoint& point,
                                std::span<const std::uint32_t> q_list) {
  if (int(pattern.size()) != d)
    throw ConfigError("coefficient pattern length must equal d");
  if (point.x < Rational(0) || point.x > Rational(1) || point.y < Rational(0) ||
      point.y > Rational(1))
    throw RangeError("exponent point must lie in [0,1]^2");
  if (region_contains(region_for(d, true), point))
    throw ProbeMeaninglessError(
        "probe meaningless: point inside the bounded region");
  if (q_list.size() < 2) throw ConfigError("sharpness probe needs >= 2 field sizes");
  if (point.x.is_zero() || point.y.is_zero())
    throw RangeError("probe exponents must be finite");

  const double p = 1.0 / point.x.value();
  const double r = 1.0 / point.y.value();

  SharpnessReport report;
  report.point = point;
  std::vector<double> qs, ratio_h, ratio_d;
  for (std::uint32_t q : q_list) {
    auto field = make_field_q(q);
    const QuadraticSurface s = make_surface(field, pattern);
    const SurfaceData sd = make_surface_data(s);
    const auto subspace = find_isotropic_subspace(s);
    if (!subspace)
      throw HypothesisError(
          "sharpness probe needs a surface containing a d/2-dim subspace");
    const GridFunction h = subspace_indicator(s, *subspace);
    GridFunction delta(field, d, Side::SpaceDx);
    delta[0] = 1.0;

    SharpnessRow row;
    row.q = q;
    row.ratio_subspace = averaging_ratio(h, sd, p, r);
    row.ratio_delta = averaging_ratio(delta, sd, p, r);
    report.rows.push_back(row);
    qs.push_back(double(q));
    ratio_h.push_back(row.ratio_subspace);
    ratio_d.push_back(row.ratio_delta);
  }
  report.slope_subspace = fit_log_slope(qs, ratio_h);
  report.slope_delta = fit_log_slope(qs, ratio_d);
  return report;
}

}  // namespace qavg
